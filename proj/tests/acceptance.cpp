// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <cli-binary> <report-schema> <scratch-dir>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lebdyn/analysis.hpp"
#include "lebdyn/errors.hpp"
#include "lebdyn/metric_core.hpp"
#include "support.hpp"

using namespace lebdyn;
using nlohmann::json;

namespace {

const double kLn2 = std::log(2.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

SystemBundle bundle(const std::string& family, json params = json::object()) {
  SystemSpec s;
  s.family = family;
  s.params = std::move(params);
  return generate_system(s);
}

double value(const RateSequence& s, std::size_t n) { return s.capped[n - 1] ? oracle::kInf : s.values[n - 1]; }

// 1. exact identities on random instances
Outcome identity_suite() {
  gen::Rng rng(2024);
  const std::size_t instances = 150;
  std::size_t cases = 0, violations = 0;
  auto expect = [&](bool ok) {
    ++cases;
    if (!ok) ++violations;
  };
  auto equal = [&](double a, double b) { expect(std::isinf(a) || std::isinf(b) ? a == b : rel_equal(a, b)); };
  std::uniform_int_distribution<std::size_t> size(3, 40);
  IteratedCoverOptions ic;
  for (std::size_t t = 0; t < instances; ++t) {
    const auto s = gen::space(rng, size(rng));
    const auto d = oracle::matrix_of(s);
    const auto fv = gen::map(rng, s.size());
    const auto f = conv::map(fv);
    const auto uf = gen::cover(rng, s.size(), 8);
    const auto u = conv::cover(s.size(), uf);
    const auto vf = gen::cover(rng, s.size(), 8);
    const auto v = conv::cover(s.size(), vf);
    const double du = conv::delta(s, u);
    equal(du, oracle::delta(d, uf));

    // join formula, with a random V and with V = f^-1(U_f^k)
    equal(conv::delta(s, join(s, u, v)), std::min(du, conv::delta(s, v)));
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto pw = pullback_cover(s, f, iterated_cover(s, f, u, k, ic));
      equal(conv::delta(s, join(s, u, pw)), std::min(du, conv::delta(s, pw)));
    }

    // running min against the direct Lebesgue number of U_f^n, and against the oracle
    const auto running = delta_sequence(s, f, u, 16);
    const auto direct = delta_sequence(s, f, u, 4, DeltaMode::direct, ic);
    for (std::size_t n = 1; n <= 4; ++n) {
      equal(value(direct, n), value(running, n));
      equal(value(running, n), oracle::delta(d, oracle::iterated(fv, uf, n)));
    }

    // power identities
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto g = map_power(f, n);
      const auto lhs = delta_sequence(s, g, iterated_cover(s, f, u, n, ic), 4);
      const auto coarse = delta_sequence(s, g, u, 4);
      for (std::size_t m = 1; m <= 4; ++m) {
        equal(value(lhs, m), value(running, m * n));
        const double a = value(coarse, m), b = value(running, m * n);
        expect(a >= b || rel_equal(a, b));
      }
    }

    // monotonicity and the finite Lipschitz bound
    const double L = std::max(lipschitz_constant(s, f), 1.0);
    for (std::size_t n = 1; n <= 16; ++n) {
      if (n > 1) expect(value(running, n) <= value(running, n - 1));
      if (std::isinf(du)) continue;
      const double bound = du * std::pow(L, -static_cast<double>(n - 1));
      expect(value(running, n) >= bound || rel_equal(value(running, n), bound));
    }
  }
  return {instances >= 100 && violations == 0,
          std::to_string(instances) + " instances, " + std::to_string(cases) + " checks, " +
              std::to_string(violations) + " violations"};
}

// 2. counting lemmas with exact solvers
Outcome counting_suite() {
  gen::Rng rng(77);
  const std::size_t instances = 120;
  std::size_t subcovers = 0, separated = 0, violations = 0, equalities = 0;
  std::uniform_int_distribution<std::size_t> size(4, 25);
  std::uniform_real_distribution<double> radius(0.05, 0.4);
  for (std::size_t t = 0; t < instances; ++t) {
    const auto s = gen::space(rng, size(rng));
    const auto fv = gen::map(rng, s.size());
    const auto f = conv::map(fv);
    const bool mesh = t % 2 == 0;
    const Cover u = mesh ? mesh_cover(s, radius(rng)) : conv::cover(s.size(), gen::cover(rng, s.size(), 6));
    const auto uf = conv::family(u);

    const auto all = oracle::minimum_subcovers(uf, s.size());
    const std::size_t S = min_subcover(s, u, SolveMode::exact).size;
    if (S != all.front().size()) ++violations;
    for (const auto& pick : all) {
      oracle::Family w;
      for (auto i : pick) w.push_back(uf[i]);
      const double dw = conv::delta(s, conv::cover(s.size(), w));
      const std::size_t N = std::isinf(dw) ? 1 : covering_number(s, dw, SolveMode::exact).count;
      ++subcovers;
      if (N < S) ++violations;
    }

    const double eps = cover_diam(s, u) * 1.0001 + 1e-9;
    const auto seq = delta_sequence(s, f, u, 4);
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t N = seq.capped[n - 1] ? 1 : covering_number(s, seq.values[n - 1], SolveMode::exact).count;
      const std::size_t sn = max_separated(s, f, n, eps, SolveMode::exact).count;
      ++separated;
      if (N < sn) ++violations;
      if (N == sn) ++equalities;
    }
  }
  return {violations == 0, std::to_string(instances) + " instances, " + std::to_string(subcovers) +
                               " minimum subcovers, " + std::to_string(separated) + " (n, eps) checks (" +
                               std::to_string(equalities) + " with equality), " + std::to_string(violations) +
                               " violations"};
}

const InequalityRow* find_row(const InequalityReport& r, const std::string& name) {
  for (const auto& row : r.rows)
    if (row.name == name) return &row;
  return nullptr;
}

// 3. doubling
Outcome doubling() {
  const auto b = bundle("doubling", {{"m", 10}});
  const auto a = analyze(b);
  bool ok = b.space.size() == 1024 && b.spec.horizon == 8;
  std::string d = "h_L per radius:";
  for (const auto& c : a.covers) {
    ok = ok && c.estimate && within(c.estimate->lower, 0.59, 0.79) && within(c.estimate->upper, 0.59, 0.79);
    if (c.estimate) d += " [" + fmt(c.estimate->lower) + ", " + fmt(c.estimate->upper) + "]";
  }
  double sep = std::nan("");
  for (const auto& e : a.entropy.separated)
    if (e.eps == 1.0 / 16) sep = e.estimate.slope;
  ok = ok && within(sep, 0.57, 0.81);
  ok = ok && within(a.dims.slope, 0.85, 1.15);
  for (const char* name : {"dimb_hl_lower_vs_entropy", "dimb_hl_lower_vs_known_entropy"}) {
    const auto* row = find_row(a.inequalities, name);
    ok = ok && row && row->passed();
  }
  return {ok, d + "; sep(1/16) " + fmt(sep) + "; dimb " + fmt(a.dims.slope) + "; entropy-dimension rows pass"};
}

// 4. rotation
Outcome rotation() {
  const auto b = bundle("rotation", {{"q", 97}, {"step", 13}});
  const auto a = analyze(b);
  bool ok = true;
  for (const auto& c : a.covers) {
    for (double v : c.sequence.values) ok = ok && v == c.sequence.values.front();
    ok = ok && c.estimate && c.estimate->lower == 0.0 && c.estimate->upper == 0.0 && c.estimate->slope == 0.0;
  }
  ok = ok && a.h_L_lower == 0.0 && a.h_L_upper == 0.0 && a.lipschitz.iterate.l == 0.0;
  if (a.hl_delta) ok = ok && a.hl_delta->estimate.upper == 0.0;
  std::size_t passed = 0, skipped = 0;
  for (const auto& r : a.inequalities.rows) {
    if (r.status == "pass") ++passed;
    else if (r.status == "skipped") ++skipped;
    else ok = false;
  }
  ok = ok && passed > 0;
  return {ok, "delta_n constant on " + std::to_string(a.covers.size()) + " covers, rates 0, " +
                  std::to_string(passed) + " rows pass, " + std::to_string(skipped) + " skipped"};
}

// 5. square-root chain
Outcome sqrt_chain() {
  const auto b = bundle("sqrt", {{"K", 6}});
  bool ok = true;
  std::size_t used = 0;
  std::string d;
  for (const auto& c : b.covers) {
    if (!(cover_diam(b.space, c.cover) < 0.1)) continue;
    ++used;
    const auto seq = delta_sequence(b.space, b.map, c.cover, 6);
    for (std::size_t n = 1; n <= 5; ++n) ok = ok && seq.values[n] <= std::ldexp(1.0, -(1 << n));
    const auto a = seq.exponents();
    const std::size_t usable = seq.usable_horizon();
    for (std::size_t n = 2; n <= usable; ++n) ok = ok && a[n - 1] > a[n - 2];
    ok = ok && usable >= 3;
    d += " " + c.id + ": a_n up to n=" + std::to_string(usable) + " ends at " + fmt(a[usable - 1]) + ";";
  }
  return {ok && used > 0, "delta_{n+1} <= 2^-2^n for n = 1..5 on " + std::to_string(used) + " covers;" + d};
}

// 6. ladder
Outcome ladder() {
  const auto b = bundle("ladder_ex3", {{"M", 64}});
  const auto it = iterate_rate(b.space, b.map, 8);
  bool ok = it.per_n[7] >= 0.64;
  std::string d = "(1/8) ln L(f^8) = " + fmt(it.per_n[7]);
  for (const auto& c : b.covers) {
    const auto seq = delta_sequence(b.space, b.map, c.cover, 8);
    std::size_t star = 8;
    while (star > 1 && seq.pullback_values[star - 2] == seq.pullback_values[7]) --star;
    const auto e = rate_bounds(seq);
    ok = ok && star <= 6 && e.upper <= 0.05;
    d += "; " + c.id + ": pullback delta constant from n=" + std::to_string(star) + ", h_L+ " + fmt(e.upper);
  }
  return {ok, d};
}

// 7. X_{a,b}
Outcome xab() {
  const auto b = bundle("xab", {{"a", 4}, {"b", 2}, {"P", 6}});
  const auto covers = cover_rates(b);
  const CoverRates* finest = nullptr;
  for (const auto& c : covers)
    if (c.estimate && (!finest || c.radius < finest->radius)) finest = &c;
  const double l = iterate_rate(b.space, b.map, b.spec.horizon).l;
  bool ok = finest && std::abs(finest->estimate->lower - kLn2) <= 0.2 * kLn2 &&
            std::abs(finest->estimate->upper - kLn2) <= 0.2 * kLn2 &&
            std::abs(l - std::log(4.0)) <= 0.2 * std::log(4.0);
  return {ok, finest ? "h_L [" + fmt(finest->estimate->lower) + ", " + fmt(finest->estimate->upper) + "] at r=" +
                           fmt(finest->radius) + ", l " + fmt(l)
                     : "no usable cover"};
}

// 8. oscillating system
Outcome oscillating() {
  const auto b = bundle("osc", {{"a", 1.0}, {"b", 0.5}, {"N_max", 700}});
  bool ok = true;
  std::string d;
  for (const auto& c : b.covers) {
    const auto seq = delta_sequence(b.space, b.map, c.cover, 700);
    const auto fast = rate_bounds(seq, Window{16, 255});
    const auto slow = rate_bounds(seq, Window{300, 650});
    ok = ok && within(fast.lower, 0.90, 1.05) && within(fast.upper, 0.90, 1.05) && within(slow.lower, 0.45, 0.55) &&
         within(slow.upper, 0.45, 0.55);
    d += " " + c.id + ": [16,255] [" + fmt(fast.lower) + ", " + fmt(fast.upper) + "], [300,650] [" + fmt(slow.lower) +
         ", " + fmt(slow.upper) + "];";
  }
  return {ok, d};
}

// 9. cylinder
Outcome cylinder() {
  const auto b = bundle("cylinder", {{"m", 9}, {"q", 16}});
  const auto p = lbd_lower_bound(b.space, b.map, 8);
  bool ok = b.spec.horizon == 8 && p.lower == 0.0 && p.upper == 0.0 && p.pairs > 0;
  std::string d = "preimage bound [" + fmt(p.lower) + ", " + fmt(p.upper) + "] over " + std::to_string(p.pairs) + " pairs;";
  for (const auto& c : cover_rates(b)) {
    ok = ok && c.estimate && within(c.estimate->lower, 0.59, 0.79) && within(c.estimate->upper, 0.59, 0.79);
    if (c.estimate) d += " " + c.id + " h_L [" + fmt(c.estimate->lower) + ", " + fmt(c.estimate->upper) + "]";
  }
  return {ok, d};
}

// 10. metric scaling
Outcome scaling() {
  bool ok = true;
  std::size_t sequences = 0;
  double worst = 0.0;
  for (const auto& [family, params] : std::vector<std::pair<std::string, json>>{
           {"doubling", json::object()}, {"ladder_ex3", json::object()}, {"xab", json::object()}, {"sqrt", json::object()}}) {
    const auto b = bundle(family, params);
    for (const auto& c : b.covers) {
      const auto base = delta_sequence(b.space, b.map, c.cover, b.spec.horizon);
      const auto e0 = rate_bounds(base);
      for (double k : {0.1, 3.0, 10.0}) {
        const auto t = scale_metric(b.space, k);
        const auto seq = delta_sequence(t, b.map, c.cover, b.spec.horizon);
        ++sequences;
        for (std::size_t n = 0; n < base.values.size(); ++n) ok = ok && seq.values[n] == k * base.values[n];
        ok = ok && seq.usable_horizon() == base.usable_horizon();
        const auto e = rate_bounds(seq);
        for (double diff : {e.lower - e0.lower, e.upper - e0.upper, e.slope - e0.slope}) worst = std::max(worst, std::abs(diff));
      }
    }
  }
  ok = ok && worst <= 1e-12;
  return {ok, std::to_string(sequences) + " scaled sequences, delta_n scaled exactly, largest rate change " + fmt(worst)};
}

// 11. pullbacks against the running minimum on doubling
Outcome pullback_rate() {
  const auto b = bundle("doubling");
  bool ok = true;
  std::string d;
  for (const auto& c : b.covers) {
    const auto seq = delta_sequence(b.space, b.map, c.cover, 8);
    RateSequence pb;
    pb.name = c.id + ":pullback";
    pb.values = seq.pullback_values;
    pb.capped = seq.pullback_capped;
    pb.resolution_floor = seq.resolution_floor;
    const auto e = rate_bounds(seq);
    const auto p = rate_bounds(pb, e.window);
    ok = ok && std::abs(e.upper - p.upper) <= 0.05;
    d += " " + c.id + ": " + fmt(p.upper) + " vs " + fmt(e.upper) + ";";
  }
  return {ok, d};
}

int run(const std::string& cmd) {
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 12. CLI contract
Outcome cli(const std::string& exe, const std::string& schema, const std::string& dir) {
  const std::string a = dir + "/verify_a.json", b = dir + "/verify_b.json", neg = dir + "/negative.json",
                    negspec = dir + "/negative_spec.json", err = dir + "/negative.err";
  const int code = run(exe + " verify --family doubling --out " + a + " 2>/dev/null");
  run(exe + " verify --family doubling --out " + b + " 2>/dev/null");
  const bool same = !slurp(a).empty() && slurp(a) == slurp(b);
  auto valid = [&](const std::string& report) {
    return run("python3 -c \"import json,jsonschema,sys; jsonschema.validate(json.load(open(sys.argv[1])), "
               "json.load(open(sys.argv[2])))\" " +
               report + " " + schema + " >/dev/null 2>&1") == 0;
  };
  const bool schema_ok = valid(a);
  {
    std::ofstream s(negspec);
    s << json{{"family", "doubling"}, {"known", {{"h", 5.0}}}}.dump() << '\n';
  }
  const int neg_code = run(exe + " verify --spec " + negspec + " --out " + neg + " 2>" + err);
  const std::string named = slurp(err);
  const bool names_row = named.find("FAILED dimb_hl_lower_vs_known_entropy") != std::string::npos;
  const bool neg_valid = valid(neg);
  const bool ok = code == 0 && schema_ok && same && neg_code == 1 && names_row && neg_valid;
  return {ok, "verify doubling exit " + std::to_string(code) + (schema_ok ? ", schema-valid" : ", schema INVALID") +
                  (same ? ", reruns byte-identical" : ", reruns DIFFER") + "; negative control exit " +
                  std::to_string(neg_code) + (names_row ? ", failed row named" : ", failed row NOT named")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <cli-binary> <report-schema> <scratch-dir>\n";
    return 2;
  }
  const std::string exe = argv[1], schema = argv[2], dir = argv[3];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"identity suite", identity_suite},
      {"counting suite", counting_suite},
      {"doubling map", doubling},
      {"rotation", rotation},
      {"square-root chain", sqrt_chain},
      {"ladder", ladder},
      {"X_{a,b} (a=4, b=2)", xab},
      {"oscillating decay", oscillating},
      {"cylinder", cylinder},
      {"metric scaling", scaling},
      {"pullback vs running-min rate", pullback_rate},
      {"CLI contract", [&] { return cli(exe, schema, dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
