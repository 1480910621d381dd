#include "lebdyn/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lebdyn/errors.hpp"

namespace lebdyn {

Window default_window(std::size_t usable) {
  if (usable < 2) throw UsageError("empty usable window: fewer than two usable indices");
  return {std::min(usable / 2 + 1, usable - 1), usable};
}

RateEstimate growth_rate(const std::vector<double>& y, const Window& window, std::string method,
                         std::size_t anchor) {
  if (window.first < 1 || window.first >= window.last || window.last > y.size())
    throw UsageError("empty usable window [" + std::to_string(window.first) + ", " + std::to_string(window.last) +
                     "] for a sequence of length " + std::to_string(y.size()));
  if (anchor == 0) anchor = window.first;
  if (anchor > window.first) throw UsageError("rate anchor lies after the window start");
  RateEstimate est;
  est.window = window;
  est.anchor = anchor;
  est.method = std::move(method);
  est.lower = std::numeric_limits<double>::infinity();
  est.upper = -std::numeric_limits<double>::infinity();
  const double y0 = y[anchor - 1];
  double num = 0.0, den = 0.0;
  for (std::size_t n = std::max(window.first, anchor + 1); n <= window.last; ++n) {
    const double dn = static_cast<double>(n - anchor);
    const double dy = y[n - 1] - y0;
    const double chord = dy / dn + 0.0;  // no negative zero
    est.lower = std::min(est.lower, chord);
    est.upper = std::max(est.upper, chord);
    num += dn * dy;
    den += dn * dn;
  }
  est.slope = std::clamp(num / den + 0.0, est.lower, est.upper);
  return est;
}

RateEstimate rate_bounds(const RateSequence& seq, std::optional<Window> window) {
  const std::size_t usable = seq.usable_horizon();
  const Window w = window ? *window : default_window(usable);
  if (w.last > usable)
    throw UsageError("window end " + std::to_string(w.last) + " is past the usable horizon " +
                     std::to_string(usable));
  std::vector<double> y(usable);
  for (std::size_t i = 0; i < usable; ++i) y[i] = -std::log(seq.values[i]);
  return growth_rate(y, w, "delta_decay:" + seq.name);
}

PrefixMaxCheck prefix_max_rate_check(const std::vector<double>& values, std::optional<Window> window) {
  const Window w = window ? *window : default_window(values.size());
  std::vector<double> prefix(values.size());
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) prefix[i] = running = std::max(running, values[i]);
  PrefixMaxCheck out;
  out.window = w;
  out.rate = growth_rate(values, w, "sequence").upper;
  out.prefix_max_rate = growth_rate(prefix, w, "prefix_max").upper;
  return out;
}

namespace {

std::vector<double> log_counts(const std::vector<CountRow>& rows) {
  std::vector<double> y;
  for (const auto& r : rows) y.push_back(std::log(static_cast<double>(r.count)));
  return y;
}

}  // namespace

CoverEntropy cover_entropy(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                           std::size_t horizon, const EntropyOptions& options) {
  if (horizon < 2) throw UsageError("cover_entropy needs a horizon of at least 2");
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  IteratedCoverOptions ic;
  ic.member_cap = options.member_cap;
  ic.maximal_only = true;
  const bool try_exact = options.mode == SolveMode::exact && space.size() <= options.exact_limit;
  const Cover base = maximal_members(cover);
  const Preimages pre(map);

  CoverEntropy out;
  Cover w = base;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1) {
      std::vector<Bits> pulled;
      for (const auto& m : w.members()) {
        Bits p = pre.pull(m);
        if (p.any()) pulled.push_back(std::move(p));
      }
      w = maximal_members(join(space, base, Cover(space.size(), std::move(pulled))));
      if (w.size() > ic.member_cap)
        throw BudgetError("iterated cover has " + std::to_string(w.size()) + " members, above the cap of " +
                          std::to_string(ic.member_cap));
    }
    SubcoverResult s;
    bool exact = false;
    if (try_exact) {
      try {
        s = min_subcover(space, w, SolveMode::exact, options.node_budget);
        exact = true;
      } catch (const BudgetError&) {
      }
    }
    if (!exact) s = min_subcover(space, w, SolveMode::greedy);
    out.upper_bound = out.upper_bound || !exact;
    out.rows.push_back({n, s.size, exact, std::log(static_cast<double>(s.size)) / static_cast<double>(n)});
  }
  const Window win = options.window ? *options.window : default_window(horizon);
  out.estimate = growth_rate(log_counts(out.rows), win, "cover_entropy", 1);
  return out;
}

std::vector<SeparatedEntropy> sep_entropy(const FiniteMetricSpace& space, const DynMap& map,
                                          const std::vector<double>& eps_list, std::size_t horizon,
                                          const EntropyOptions& options) {
  if (horizon < 2) throw UsageError("sep_entropy needs a horizon of at least 2");
  if (eps_list.empty()) throw UsageError("sep_entropy needs at least one eps");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw UsageError("sep_entropy: eps must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw UsageError("sep_entropy: eps list must decrease");
  }
  require_valid_map(space, map);
  const bool try_exact = options.mode == SolveMode::exact && space.size() <= options.exact_limit;
  const std::size_t size = space.size();
  std::vector<SeparatedEntropy> out;
  for (double eps : eps_list) {
    SeparatedEntropy e;
    e.eps = eps;
    // close[u]: points v with d_f^n(u, v) <= eps, refined one iterate at a time.
    std::vector<Bits> close(size, Bits(size));
    for (PointId u = 0; u < size; ++u)
      for (PointId v = u + 1; v < size; ++v)
        if (space.dist(u, v) <= eps) {
          close[u].set(v);
          close[v].set(u);
        }
    std::vector<PointId> pos(size);
    std::iota(pos.begin(), pos.end(), PointId{0});
    for (std::size_t n = 1; n <= horizon; ++n) {
      if (n > 1) {
        for (auto& p : pos) p = map(p);
        for (PointId u = 0; u < size; ++u)
          for (auto v = close[u].find_next(u); v != Bits::npos; v = close[u].find_next(v))
            if (space.dist(pos[u], pos[v]) > eps) {
              close[u].reset(v);
              close[v].reset(u);
            }
      }
      IndependentSetSolution s;
      bool exact = false;
      if (try_exact) {
        try {
          s = exact_independent_set(close, options.node_budget);
          exact = true;
        } catch (const BudgetError&) {
        }
      }
      if (!exact) s = greedy_independent_set(size, [&](PointId u, PointId v) { return close[u].test(v); });
      e.lower_bound = e.lower_bound || !exact;
      const std::size_t count = s.members.size();
      e.rows.push_back({n, count, exact, std::log(static_cast<double>(count)) / static_cast<double>(n)});
    }
    const Window win = options.window ? *options.window : default_window(horizon);
    e.estimate = growth_rate(log_counts(e.rows), win, "separated_entropy", 1);
    out.push_back(std::move(e));
  }
  return out;
}

HlEstimates hl_estimates(const FiniteMetricSpace& space, const DynMap& map, const std::vector<double>& radii,
                         std::size_t horizon, std::optional<Window> window) {
  if (radii.size() < 2) throw UsageError("hl_estimates needs at least two mesh radii");
  HlEstimates out;
  std::size_t finest = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    RadiusRate rr;
    rr.radius = radii[i];
    const Cover cover = mesh_cover(space, radii[i]);
    rr.members = cover.size();
    rr.diam = cover_diam(space, cover);
    rr.sequence = delta_sequence(space, map, cover, horizon);
    rr.sequence.name = "mesh_r=" + std::to_string(radii[i]);
    rr.estimate = rate_bounds(rr.sequence, window);
    if (radii[i] < radii[finest]) finest = i;
    out.per_radius.push_back(std::move(rr));
  }
  out.lower = out.per_radius[finest].estimate.lower;
  out.upper = out.per_radius[finest].estimate.upper;
  out.finest_radius = radii[finest];
  return out;
}

HlDelta hl_delta_estimate(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                          std::size_t horizon, std::size_t node_budget, std::optional<Window> window) {
  if (horizon == 0) throw UsageError("hl_delta_estimate needs a horizon of at least 1");
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  IteratedCoverOptions ic;
  ic.maximal_only = true;
  HlDelta out;
  out.delta_min.name = "Delta_n";
  out.lebesgue.name = "delta_n";
  out.delta_min.resolution_floor = out.lebesgue.resolution_floor = space.min_positive_distance();
  const Cover base = maximal_members(cover);
  const Preimages pre(map);
  Cover w = base;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1) {
      std::vector<Bits> pulled;
      for (const auto& m : w.members()) {
        Bits p = pre.pull(m);
        if (p.any()) pulled.push_back(std::move(p));
      }
      w = maximal_members(join(space, base, Cover(space.size(), std::move(pulled))));
    }
    const auto d = delta_minimal_subcovers(space, w, node_budget);
    const auto l = lebesgue_number(space, w);
    if ((d.capped && !l.capped) || (!d.capped && !l.capped && d.delta > l.delta))
      throw NumericError("Delta_n exceeds delta_n at n = " + std::to_string(n));
    out.delta_min.values.push_back(d.delta);
    out.delta_min.capped.push_back(d.capped);
    out.lebesgue.values.push_back(l.delta);
    out.lebesgue.capped.push_back(l.capped);
    out.min_sizes.push_back(d.min_size);
  }
  const std::size_t usable = std::min(out.delta_min.usable_horizon(), out.lebesgue.usable_horizon());
  const Window w_est = window ? *window : default_window(usable);
  out.estimate = rate_bounds(out.delta_min, w_est);
  out.lebesgue_estimate = rate_bounds(out.lebesgue, w_est);
  return out;
}

bool InequalityReport::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const InequalityRow& r) { return r.status == "fail"; });
}

std::vector<std::string> InequalityReport::failed_rows() const {
  std::vector<std::string> out;
  for (const auto& r : rows)
    if (r.status == "fail") out.push_back(r.name);
  return out;
}

namespace {

// One factor of a row side: a value and where it came from.
struct Term {
  double value = 0.0;
  std::string src;  // "analytic" or a measured source
};

std::optional<Term> analytic(const std::optional<Cited>& c) {
  if (!c) return std::nullopt;
  return Term{c->value, "analytic"};
}

std::optional<Term> measured(const std::optional<Measured>& m) {
  if (!m) return std::nullopt;
  return Term{m->value, m->source};
}

std::optional<Term> prefer(std::optional<Term> a, std::optional<Term> b) { return a ? a : b; }

std::string combine_sources(const std::vector<Term>& terms) {
  bool all_analytic = true, upper = false, lower = false;
  for (const auto& t : terms) {
    if (t.src != "analytic") all_analytic = false;
    if (t.src == "greedy-upper") upper = true;
    if (t.src == "greedy-lower") lower = true;
  }
  if (all_analytic) return "analytic";
  if (upper && !lower) return "measured:greedy-upper";
  if (lower && !upper) return "measured:greedy-lower";
  if (upper && lower) return "measured:greedy-mixed";
  return "measured";
}

class RowBuilder {
 public:
  explicit RowBuilder(const VerifyConfig& config) : config_(config) {}

  void add(std::string name, std::string statement, const std::vector<std::optional<Term>>& lhs,
           const std::vector<std::optional<Term>>& rhs, std::string note = {}) {
    InequalityRow row;
    row.name = std::move(name);
    row.statement = std::move(statement);
    row.note = std::move(note);
    std::vector<Term> l, r;
    for (const auto& t : lhs)
      if (t) l.push_back(*t);
    for (const auto& t : rhs)
      if (t) r.push_back(*t);
    if (l.size() != lhs.size() || r.size() != rhs.size()) {
      row.status = "skipped";
      row.lhs = row.rhs = row.slack = std::numeric_limits<double>::quiet_NaN();
      row.lhs_src = l.size() == lhs.size() ? combine_sources(l) : "missing";
      row.rhs_src = r.size() == rhs.size() ? combine_sources(r) : "missing";
      if (row.note.empty()) row.note = "required value unavailable";
      report.rows.push_back(std::move(row));
      return;
    }
    row.lhs = product(l);
    row.rhs = product(r);
    row.slack = row.lhs - row.rhs;
    row.lhs_src = combine_sources(l);
    row.rhs_src = combine_sources(r);
    const bool analytic_only = row.lhs_src == "analytic" && row.rhs_src == "analytic";
    row.tol = analytic_only ? config_.analytic_tolerance : config_.tolerance;
    if (row.slack >= -row.tol) {
      row.status = "pass";
    } else if (row.rhs_src.find("greedy-upper") != std::string::npos ||
               row.lhs_src.find("greedy-lower") != std::string::npos) {
      // A bound in the unfavourable direction cannot certify a violation.
      row.status = "inconclusive";
    } else {
      row.status = "fail";
    }
    report.rows.push_back(std::move(row));
  }

  void skip(std::string name, std::string statement, std::string note) {
    InequalityRow row;
    row.name = std::move(name);
    row.statement = std::move(statement);
    row.status = "skipped";
    row.lhs = row.rhs = row.slack = std::numeric_limits<double>::quiet_NaN();
    row.note = std::move(note);
    report.rows.push_back(std::move(row));
  }

  InequalityReport report;

 private:
  // 0 * inf counts as 0.
  static double product(const std::vector<Term>& ts) {
    double p = 1.0;
    for (const auto& t : ts) {
      if (t.value == 0.0) return 0.0;
      p *= t.value;
    }
    return p;
  }

  const VerifyConfig& config_;
};

std::optional<Term> positive_log(std::optional<Term> L) {
  if (!L) return std::nullopt;
  return Term{L->value > 1.0 ? std::log(L->value) : 0.0, L->src};
}

std::optional<Term> positive_part(std::optional<Term> t) {
  if (!t) return std::nullopt;
  return Term{std::max(t->value, 0.0), t->src};
}

}  // namespace

InequalityReport verify_inequalities(const Measurements& m, const KnownInvariants& k, const VerifyConfig& config) {
  RowBuilder b(config);
  const auto dimb_measured = prefer(measured(m.dimb), analytic(k.dimb));
  const auto dimb_known = prefer(analytic(k.dimb), measured(m.dimb));
  const auto h_known = prefer(analytic(k.h), measured(m.h_separated));
  const auto L = prefer(measured(m.lipschitz), analytic(k.L));
  // A known l(f) outranks the finite-horizon estimate, which a truncation can pull down.
  const auto l = prefer(analytic(k.l), measured(m.l));

  b.add("dimb_hl_delta_vs_cover_entropy", "dimb(X) * h_LDelta(f,U) >= h(f,U)", {dimb_measured, measured(m.h_L_delta)},
        {measured(m.h_cover)});
  b.add("dimb_hl_lower_vs_entropy", "dimb(X) * h_L-(f) >= h(f)", {dimb_measured, measured(m.h_L_lower)},
        {measured(m.h_separated)});
  b.add("dimb_hl_lower_vs_known_entropy", "dimb(X) * h_L-(f) >= h(f)", {dimb_known, measured(m.h_L_lower)}, {analytic(k.h)});
  b.add("dimh_hl_upper_vs_entropy", "dimh(X) * h_L+(f) >= h(f)", {analytic(k.dimh), measured(m.h_L_upper)}, {h_known},
        k.dimh ? "" : "no analytic Hausdorff dimension for this system");
  b.add("log_lipschitz_vs_hl_upper", "max(ln L(f), 0) >= h_L+(f,U)", {positive_log(L)}, {measured(m.h_L_upper)});
  if (l && l->value > 0.0) {
    b.add("dimh_l_vs_entropy", "dimh(X) * l(f) >= h(f)", {analytic(k.dimh), l}, {h_known},
          k.dimh ? "" : "no analytic Hausdorff dimension for this system");
  } else {
    b.skip("dimh_l_vs_entropy", "dimh(X) * l(f) >= h(f)", "requires l(f) > 0");
  }
  b.add("chain_lower_upper", "h_L+(f) >= h_L-(f)", {measured(m.h_L_upper)}, {measured(m.h_L_lower)});
  b.add("chain_upper_l", "max(l(f), 0) >= h_L+(f)", {positive_part(l)}, {measured(m.h_L_upper)});
  b.add("dimb_log_lipschitz_vs_entropy", "dimb(X) * max(ln L(f), 0) >= h(f)", {dimb_known, positive_log(L)}, {h_known});
  return b.report;
}

}  // namespace lebdyn
