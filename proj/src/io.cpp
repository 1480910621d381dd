#include "lebdyn/io.hpp"

#include <cmath>
#include <cstdio>

namespace lebdyn {

using json = nlohmann::json;

namespace {

const char* mode_name(SolveMode m) { return m == SolveMode::exact ? "exact" : "greedy"; }

json cited_json(const std::optional<Cited>& c) {
  if (!c) return nullptr;
  return {{"value", number_json(c->value)}, {"citation", c->citation}};
}

json measured_json(const std::optional<Measured>& m) {
  if (!m) return nullptr;
  return {{"value", number_json(m->value)}, {"source", m->source}};
}

json count_rows(const std::vector<CountRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n}, {"count", r.count}, {"exact", r.exact}, {"per_n", number_json(r.per_n)}});
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v, const std::string& note) {
  if (v) return to_json(*v);
  return {{"skipped", note}};
}

}  // namespace

json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const Window& w) { return json::array({w.first, w.last}); }

json to_json(const RateEstimate& e) {
  return {{"lower", number_json(e.lower)}, {"upper", number_json(e.upper)}, {"slope", number_json(e.slope)},
          {"window", to_json(e.window)}, {"anchor", e.anchor}, {"method", e.method}};
}

json to_json(const RateSequence& s) {
  json rows = json::array();
  const auto a = s.exponents();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    json r{{"n", i + 1}, {"delta", number_json(s.values[i])}, {"a", number_json(a[i])}, {"capped", s.capped[i]}};
    if (i < s.pullback_values.size()) {
      r["pullback_delta"] = number_json(s.pullback_values[i]);
      r["pullback_capped"] = static_cast<bool>(s.pullback_capped[i]);
    }
    rows.push_back(std::move(r));
  }
  return {{"name", s.name}, {"rows", rows}, {"usable_horizon", s.usable_horizon()},
          {"resolution_floor", number_json(s.resolution_floor)}};
}

json to_json(const CoverRates& c) {
  json j{{"cover_id", c.id}, {"radius", number_json(c.radius)}, {"members", c.members},
         {"cover_diam", number_json(c.diam)}, {"sequence", to_json(c.sequence)}};
  j["estimate"] = c.estimate ? to_json(*c.estimate) : json(nullptr);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const LipschitzRates& l) {
  json rows = json::array();
  for (std::size_t i = 0; i < l.iterate.lipschitz.size(); ++i)
    rows.push_back({{"n", i + 1}, {"lipschitz", number_json(l.iterate.lipschitz[i])},
                    {"per_n", number_json(l.iterate.per_n[i])}});
  return {{"lipschitz", number_json(l.lipschitz)}, {"l", number_json(l.iterate.l)},
          {"subadditive", l.iterate.subadditive}, {"rows", rows}};
}

json to_json(const CoverEntropy& e) {
  return {{"rows", count_rows(e.rows)}, {"estimate", to_json(e.estimate)},
          {"source", e.upper_bound ? "greedy-upper" : "exact"}};
}

json to_json(const SeparatedEntropy& e) {
  return {{"eps", number_json(e.eps)}, {"rows", count_rows(e.rows)}, {"estimate", to_json(e.estimate)},
          {"source", e.lower_bound ? "greedy-lower" : "exact"}};
}

json to_json(const EntropyTables& e) {
  json sep = json::array();
  for (const auto& s : e.separated) sep.push_back(to_json(s));
  json cover = optional_json(e.cover, e.cover_note);
  cover["cover_id"] = e.cover_id;
  return {{"cover", cover}, {"separated", sep}};
}

json to_json(const DimEstimate& d) {
  json rows = json::array();
  for (const auto& s : d.per_scale)
    rows.push_back({{"gamma", number_json(s.gamma)}, {"count", s.count}, {"mode", mode_name(s.mode)}});
  return {{"scales", rows}, {"slope", number_json(d.slope)}, {"gamma_min", number_json(d.gamma_min)},
          {"gamma_max", number_json(d.gamma_max)}};
}

json to_json(const HlDelta& h) {
  json rows = json::array();
  for (std::size_t i = 0; i < h.delta_min.values.size(); ++i)
    rows.push_back({{"n", i + 1}, {"Delta", number_json(h.delta_min.values[i])},
                    {"delta", number_json(h.lebesgue.values[i])}, {"min_size", h.min_sizes[i]}});
  return {{"rows", rows}, {"estimate", to_json(h.estimate)}, {"lebesgue_estimate", to_json(h.lebesgue_estimate)}};
}

json to_json(const PreimageBound& p) {
  return {{"lower", number_json(p.lower)}, {"upper", number_json(p.upper)}, {"x", p.x}, {"y", p.y},
          {"pairs", p.pairs}, {"window", json::array({p.window_first, p.window_last})}};
}

json to_json(const IdentityCheck& c) {
  json j{{"name", c.name},         {"statement", c.statement},
         {"cases", c.cases},       {"violations", c.violations},
         {"max_error", number_json(c.max_error)}, {"status", c.status}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const InequalityRow& r) {
  json j{{"name", r.name},
         {"statement", r.statement},
         {"lhs", number_json(r.lhs)},
         {"rhs", number_json(r.rhs)},
         {"slack", number_json(r.slack)},
         {"tol", number_json(r.tol)},
         {"pass", r.passed()},
         {"status", r.status},
         {"lhs_src", r.lhs_src},
         {"rhs_src", r.rhs_src}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const InequalityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return rows;
}

json to_json(const KnownInvariants& k) {
  return {{"h", cited_json(k.h)},           {"dimb", cited_json(k.dimb)}, {"dimh", cited_json(k.dimh)},
          {"h_L_lower", cited_json(k.h_L_lower)}, {"h_L_upper", cited_json(k.h_L_upper)},
          {"l", cited_json(k.l)},           {"L", cited_json(k.L)}};
}

json to_json(const Measurements& m) {
  return {{"dimb", measured_json(m.dimb)},         {"h_L_lower", measured_json(m.h_L_lower)},
          {"h_L_upper", measured_json(m.h_L_upper)}, {"h_L_delta", measured_json(m.h_L_delta)},
          {"h_cover", measured_json(m.h_cover)},     {"h_separated", measured_json(m.h_separated)},
          {"lipschitz", measured_json(m.lipschitz)}, {"l", measured_json(m.l)}};
}

json to_json(const Analysis& a) {
  json covers = json::array();
  for (const auto& c : a.covers) covers.push_back(to_json(c));
  json identities = json::array();
  for (const auto& c : a.identities) identities.push_back(to_json(c));
  json hl{{"lower", a.h_L_lower ? number_json(*a.h_L_lower) : json(nullptr)},
          {"upper", a.h_L_upper ? number_json(*a.h_L_upper) : json(nullptr)},
          {"finest_radius", a.finest_radius ? number_json(*a.finest_radius) : json(nullptr)}};
  json hl_delta = optional_json(a.hl_delta, a.hl_delta_note);
  hl_delta["cover_id"] = a.hl_delta_cover;
  json failed = json::array();
  for (const auto& n : a.inequalities.failed_rows()) failed.push_back(n);
  for (const auto& c : a.identities)
    if (c.status == "fail") failed.push_back(c.name);
  return {{"delta_tables", covers},
          {"h_L", hl},
          {"hl_delta", hl_delta},
          {"iterate", to_json(a.lipschitz)},
          {"entropy", to_json(a.entropy)},
          {"dims", to_json(a.dims)},
          {"preimage_bound", optional_json(a.preimage, a.preimage_note)},
          {"identities", identities},
          {"measured", to_json(a.measured)},
          {"inequalities", to_json(a.inequalities)},
          {"passed", !a.failed()},
          {"failed", failed}};
}

json catalog_json() {
  json out = json::array();
  for (const auto& f : list_families()) {
    json params = json::array();
    for (const auto& p : f.params)
      params.push_back({{"name", p.name}, {"default", number_json(p.default_value)}, {"doc", p.doc}});
    out.push_back({{"name", f.name}, {"citation", f.citation}, {"summary", f.summary}, {"params", params}});
  }
  return out;
}

json system_json(const SystemBundle& b) {
  return {{"spec", spec_to_json(b.spec)},
          {"points", b.space.size()},
          {"diameter", number_json(b.space.diameter())},
          {"resolution_floor", number_json(b.space.min_positive_distance())},
          {"dim_scales", b.dim_scales},
          {"known", to_json(b.known)}};
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out + '\n';
}

std::string delta_csv(const std::string& system, const std::vector<CoverRates>& covers) {
  std::string out = csv_line({"system", "cover_id", "n", "delta_n", "a_n", "capped"});
  for (const auto& c : covers) {
    const auto a = c.sequence.exponents();
    for (std::size_t i = 0; i < c.sequence.values.size(); ++i)
      out += csv_line({system, c.id, std::to_string(i + 1), csv_number(c.sequence.values[i]), csv_number(a[i]),
                       c.sequence.capped[i] ? "true" : "false"});
  }
  return out;
}

std::string rates_csv(const std::string& system, const std::vector<CoverRates>& covers,
                      const std::optional<HlDelta>& hl_delta, const std::string& hl_delta_cover,
                      const LipschitzRates& lipschitz) {
  std::string out =
      csv_line({"system", "quantity", "param", "lower", "upper", "slope", "window_first", "window_last"});
  auto row = [&](const std::string& q, const std::string& p, const RateEstimate& e) {
    out += csv_line({system, q, p, csv_number(e.lower), csv_number(e.upper), csv_number(e.slope),
                     std::to_string(e.window.first), std::to_string(e.window.last)});
  };
  for (const auto& c : covers) {
    if (c.estimate) {
      row("delta_decay", c.id, *c.estimate);
    } else {
      out += csv_line({system, "delta_decay", c.id, "nan", "nan", "nan", "0", "0"});
    }
  }
  if (hl_delta) row("Delta_decay", hl_delta_cover, hl_delta->estimate);
  const double l = lipschitz.iterate.l;
  out += csv_line({system, "iterate_rate", "l", csv_number(l), csv_number(l), csv_number(l), "1",
                   std::to_string(lipschitz.iterate.per_n.size())});
  return out;
}

std::string entropy_csv(const std::string& system, const EntropyTables& tables) {
  std::string out = csv_line({"system", "estimator", "param", "n", "count", "exact", "per_n"});
  if (tables.cover)
    for (const auto& r : tables.cover->rows)
      out += csv_line({system, "cover", tables.cover_id, std::to_string(r.n), std::to_string(r.count),
                       r.exact ? "true" : "false", csv_number(r.per_n)});
  for (const auto& s : tables.separated)
    for (const auto& r : s.rows)
      out += csv_line({system, "separated", csv_number(s.eps), std::to_string(r.n), std::to_string(r.count),
                       r.exact ? "true" : "false", csv_number(r.per_n)});
  return out;
}

std::string dims_csv(const std::string& system, const DimEstimate& dims) {
  std::string out = csv_line({"system", "gamma", "count", "mode"});
  for (const auto& s : dims.per_scale)
    out += csv_line({system, csv_number(s.gamma), std::to_string(s.count), mode_name(s.mode)});
  return out;
}

std::string inequality_csv(const InequalityReport& report) {
  std::string out = csv_line({"name", "lhs", "rhs", "slack", "tol", "pass", "lhs_src", "rhs_src", "status"});
  for (const auto& r : report.rows)
    out += csv_line({r.name, csv_number(r.lhs), csv_number(r.rhs), csv_number(r.slack), csv_number(r.tol),
                     r.passed() ? "true" : "false", r.lhs_src, r.rhs_src, r.status});
  return out;
}

}  // namespace lebdyn
