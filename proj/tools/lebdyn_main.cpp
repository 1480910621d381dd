// lebdyn command-line front end.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lebdyn/analysis.hpp"
#include "lebdyn/errors.hpp"
#include "lebdyn/io.hpp"
#include "lebdyn/systems.hpp"

namespace {

using json = nlohmann::json;
using namespace lebdyn;

struct RunConfig {
  std::string spec_path;
  std::string family;
  std::vector<std::string> params;
  std::string format = "json";
  std::string out;
  std::size_t horizon = 0;
  std::string mesh;
  std::size_t exact_limit = 25;
  double tolerance = 0.15;
  std::string window;
  bool timing = false;
};

double parse_real(const std::string& s) {
  std::size_t pos = 0;
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash), &pos);
      if (pos != slash) throw std::invalid_argument(s);
      const std::string rest = s.substr(slash + 1);
      const double den = std::stod(rest, &pos);
      if (pos != rest.size()) throw std::invalid_argument(s);
      return num / den;
    }
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(parse_real(tok));
  if (out.empty()) throw UsageError("empty list: '" + s + "'");
  return out;
}

Window parse_window(const std::string& s, std::size_t horizon) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("window must look like a:b, got '" + s + "'");
  Window w;
  try {
    w.first = std::stoul(s.substr(0, colon));
    w.last = std::stoul(s.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw UsageError("window must look like a:b, got '" + s + "'");
  }
  if (w.first < 1 || w.first >= w.last || w.last > horizon)
    throw UsageError("window " + s + " must satisfy 1 <= a < b <= horizon (" + std::to_string(horizon) + ")");
  return w;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SystemSpec build_spec(const RunConfig& cfg) {
  SystemSpec spec;
  if (!cfg.spec_path.empty()) {
    if (!cfg.family.empty()) throw UsageError("--spec and --family are mutually exclusive");
    json j;
    try {
      j = json::parse(read_file(cfg.spec_path));
    } catch (const json::parse_error& e) {
      throw UsageError(cfg.spec_path + ": " + e.what());
    }
    spec = spec_from_json(j);
  } else if (!cfg.family.empty()) {
    spec.family = cfg.family;
  } else {
    throw UsageError("one of --spec or --family is required");
  }
  for (const auto& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    json v = json::parse(value, nullptr, false);
    if (v.is_discarded()) v = value;
    spec.params[kv.substr(0, eq)] = v;
  }
  if (cfg.horizon) spec.horizon = cfg.horizon;
  if (!cfg.mesh.empty()) spec.mesh_radii = parse_list(cfg.mesh);
  return resolve_spec(spec);
}

AnalysisOptions build_options(const RunConfig& cfg, const SystemSpec& spec) {
  AnalysisOptions o;
  if (const char* b = std::getenv("LEBDYN_BUDGET")) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(b, &pos);
      if (pos != std::string(b).size() || v <= 0) throw std::invalid_argument(b);
      o.node_budget = static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("LEBDYN_BUDGET must be a positive integer, got '") + b + "'");
    }
  }
  o.exact_limit = cfg.exact_limit;
  if (!(cfg.tolerance >= 0.0)) throw UsageError("--tolerance must be non-negative");
  o.verify.tolerance = cfg.tolerance;
  if (!cfg.window.empty()) o.window = parse_window(cfg.window, spec.horizon);
  return o;
}

json config_json(const SystemSpec& spec, const AnalysisOptions& o, const std::string& format) {
  return {{"spec", spec_to_json(spec)},
          {"format", format},
          {"node_budget", o.node_budget},
          {"member_cap", o.member_cap},
          {"exact_limit", o.exact_limit},
          {"join_limit", o.join_limit},
          {"tolerance", o.verify.tolerance},
          {"analytic_tolerance", o.verify.analytic_tolerance},
          {"window", o.window ? to_json(*o.window) : json(nullptr)}};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

int run_list(bool as_json) {
  if (as_json) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"families", catalog_json()}}.dump(2) << '\n';
    return 0;
  }
  for (const auto& f : list_families()) {
    std::printf("%-10s %s\n", f.name.c_str(), f.summary.c_str());
    for (const auto& p : f.params) std::printf("    %-16s %-10g %s\n", p.name.c_str(), p.default_value, p.doc.c_str());
  }
  return 0;
}

int run_command(const std::string& command, const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  const auto start = std::chrono::steady_clock::now();
  const SystemSpec spec = build_spec(cfg);
  const AnalysisOptions opts = build_options(cfg, spec);
  const SystemBundle bundle = generate_system(spec);
  const std::string& name = spec.family;
  const bool csv = cfg.format == "csv";

  json report{{"schema_version", kSchemaVersion},
              {"command", command},
              {"config", config_json(spec, opts, cfg.format)},
              {"system", system_json(bundle)}};
  std::string text;
  int code = 0;

  if (command == "delta-table") {
    const auto covers = cover_rates(bundle, opts);
    if (csv) text = delta_csv(name, covers);
    json t = json::array();
    for (const auto& c : covers) t.push_back(to_json(c));
    report["delta_tables"] = t;
  } else if (command == "rates") {
    const Analysis a = analyze_rates(bundle, opts);
    if (csv) text = rates_csv(name, a.covers, a.hl_delta, a.hl_delta_cover, a.lipschitz);
    const json full = to_json(a);
    for (const char* k : {"delta_tables", "h_L", "hl_delta", "iterate"}) report[k] = full.at(k);
  } else if (command == "entropy") {
    const EntropyTables e = entropy_tables(bundle, opts);
    if (csv) text = entropy_csv(name, e);
    report["entropy"] = to_json(e);
  } else if (command == "dims") {
    const DimEstimate d = dimension_table(bundle, opts);
    if (csv) text = dims_csv(name, d);
    report["dims"] = to_json(d);
  } else {
    const Analysis a = analyze(bundle, opts);
    if (csv) {
      if (command == "verify") {
        text = inequality_csv(a.inequalities);
      } else {
        text = "# delta-table\n" + delta_csv(name, a.covers) + "\n# rates\n" +
               rates_csv(name, a.covers, a.hl_delta, a.hl_delta_cover, a.lipschitz) + "\n# entropy\n" +
               entropy_csv(name, a.entropy) + "\n# dims\n" + dims_csv(name, a.dims) + "\n# verify\n" +
               inequality_csv(a.inequalities);
      }
    }
    report.update(to_json(a));
    if (a.failed()) {
      code = 1;
      for (const auto& row : report.at("failed")) std::cerr << "FAILED " << row.get<std::string>() << '\n';
    }
  }

  if (cfg.timing)
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!csv) text = report.dump(2) + '\n';
  emit(cfg, text);
  return code;
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--spec", cfg.spec_path, "system spec JSON file");
  sub->add_option("--family", cfg.family, "family name (see `list`)");
  sub->add_option("--param", cfg.params, "family parameter k=v; v is parsed as JSON when possible");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--horizon", cfg.horizon, "number of iterates N")->check(CLI::PositiveNumber);
  sub->add_option("--mesh", cfg.mesh, "comma-separated mesh radii, e.g. 1/16,1/32");
  sub->add_option("--exact-limit", cfg.exact_limit, "largest instance handed to exact solvers")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--tolerance", cfg.tolerance, "tolerance for rows with a measured side");
  sub->add_option("--window", cfg.window, "rate window a:b (1-based, inclusive)");
  sub->add_flag("--timing", cfg.timing, "add wall_time_s to JSON output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lebesgue numbers of covers under iteration: tables, rates and inequality checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool list_json = false;
  auto* list = app.add_subcommand("list", "list system families");
  list->add_flag("--json", list_json, "machine-readable catalog");
  std::vector<std::pair<std::string, CLI::App*>> commands;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"delta-table", "delta_n tables for every cover"},
           {"rates", "decay rates of delta_n and Delta_n, and the iterate Lipschitz rate"},
           {"entropy", "cover and separated-set entropy tables"},
           {"dims", "box-counting dimension"},
           {"verify", "inequality rows and identity checks; exit 1 on a failure"},
           {"report", "all of the above"}}) {
    auto* sub = app.add_subcommand(name, help);
    add_run_options(sub, cfg);
    commands.emplace_back(name, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list->parsed()) return run_list(list_json);
    for (const auto& [name, sub] : commands)
      if (sub->parsed()) return run_command(name, cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
