#include "lebdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lebdyn/errors.hpp"

namespace lebdyn {

namespace {

bool same(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

double rel_error(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Lebesgue number with capped values mapped to +infinity.
double leb(const FiniteMetricSpace& space, const Cover& cover) {
  const auto rep = lebesgue_number(space, cover);
  return rep.capped ? std::numeric_limits<double>::infinity() : rep.delta;
}

double seq_value(const RateSequence& s, std::size_t n) {
  return s.capped[n - 1] ? std::numeric_limits<double>::infinity() : s.values[n - 1];
}

struct Tally {
  IdentityCheck check;

  Tally(std::string name, std::string statement) {
    check.name = std::move(name);
    check.statement = std::move(statement);
  }

  void equal(double a, double b) {
    ++check.cases;
    if (std::isinf(a) || std::isinf(b)) {
      if (a != b) ++check.violations;
      return;
    }
    check.max_error = std::max(check.max_error, rel_error(a, b));
    if (!same(a, b)) ++check.violations;
  }

  // a >= b up to the relative tolerance.
  void at_least(double a, double b) {
    ++check.cases;
    if (a >= b || same(a, b)) return;
    ++check.violations;
    if (!std::isinf(a) && !std::isinf(b)) check.max_error = std::max(check.max_error, rel_error(a, b));
  }

  IdentityCheck done() {
    check.status = check.violations == 0 ? "pass" : "fail";
    return check;
  }

  IdentityCheck skipped(std::string note) {
    check.status = "skipped";
    check.note = std::move(note);
    return check;
  }
};

const NamedCover& coarsest(const SystemBundle& b) {
  return *std::max_element(b.covers.begin(), b.covers.end(),
                           [](const NamedCover& x, const NamedCover& y) { return x.radius < y.radius; });
}

SolveMode mode_for(const SystemBundle& b, const AnalysisOptions& o) {
  return b.space.size() <= o.exact_limit ? SolveMode::exact : SolveMode::greedy;
}

std::vector<IdentityCheck> join_identities(const SystemBundle& b, const Cover& cover, std::size_t top,
                                           const AnalysisOptions& o) {
  const auto& space = b.space;
  const auto& f = b.map;
  IteratedCoverOptions ic;
  ic.member_cap = o.member_cap;
  std::vector<IdentityCheck> out;

  Tally join_check("join_formula", "delta(U v f^-1 W) = min(delta(U), delta(f^-1 W)) for W = U_f^k");
  Tally direct("running_min_vs_direct", "delta(U_f^n) = min_{k<n} delta(f^-k U)");
  Tally power("power_identity", "delta_m(f^n, U_f^n) = delta_mn(f, U)");
  Tally power_ineq("power_inequality", "delta_m(f^n, U) >= delta_mn(f, U)");
  try {
    const double du = leb(space, cover);
    for (std::size_t k = 1; k < top; ++k) {
      const Cover w = iterated_cover(space, f, cover, k, ic);
      const Cover pw = pullback_cover(space, f, w);
      join_check.equal(leb(space, join(space, cover, pw)), std::min(du, leb(space, pw)));
    }
    out.push_back(join_check.done());
  } catch (const BudgetError& e) {
    out.push_back(join_check.skipped(e.what()));
  }

  const auto running = delta_sequence(space, f, cover, top * top);
  try {
    const auto d = delta_sequence(space, f, cover, top, DeltaMode::direct, ic);
    for (std::size_t n = 1; n <= top; ++n) direct.equal(seq_value(d, n), seq_value(running, n));
    out.push_back(direct.done());
  } catch (const BudgetError& e) {
    out.push_back(direct.skipped(e.what()));
  }

  try {
    for (std::size_t n = 2; n <= top; ++n) {
      const DynMap g = map_power(f, n);
      const Cover w = iterated_cover(space, f, cover, n, ic);
      const auto lhs = delta_sequence(space, g, w, top);
      const auto coarse = delta_sequence(space, g, cover, top);
      for (std::size_t m = 1; m <= top; ++m) {
        power.equal(seq_value(lhs, m), seq_value(running, m * n));
        power_ineq.at_least(seq_value(coarse, m), seq_value(running, m * n));
      }
    }
    out.push_back(power.done());
    out.push_back(power_ineq.done());
  } catch (const BudgetError& e) {
    out.push_back(power.skipped(e.what()));
    out.push_back(power_ineq.skipped(e.what()));
  }
  return out;
}

}  // namespace

std::vector<CoverRates> cover_rates(const SystemBundle& bundle, const AnalysisOptions& options) {
  std::vector<CoverRates> out;
  for (const auto& nc : bundle.covers) {
    CoverRates r;
    r.id = nc.id;
    r.radius = nc.radius;
    r.members = nc.cover.size();
    r.diam = cover_diam(bundle.space, nc.cover);
    r.sequence = delta_sequence(bundle.space, bundle.map, nc.cover, bundle.spec.horizon);
    r.sequence.name = nc.id;
    try {
      r.estimate = rate_bounds(r.sequence, options.window);
    } catch (const UsageError& e) {
      r.note = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

LipschitzRates lipschitz_rates(const SystemBundle& bundle) {
  LipschitzRates out;
  out.iterate = iterate_rate(bundle.space, bundle.map, bundle.spec.horizon);
  out.lipschitz = out.iterate.lipschitz.front();
  return out;
}

EntropyTables entropy_tables(const SystemBundle& bundle, const AnalysisOptions& options) {
  EntropyTables out;
  EntropyOptions eo;
  eo.mode = SolveMode::exact;
  eo.node_budget = options.node_budget;
  eo.member_cap = options.member_cap;
  eo.exact_limit = options.exact_limit;
  eo.window = options.window;
  const auto& nc = coarsest(bundle);
  out.cover_id = nc.id;
  if (bundle.space.size() > options.join_limit) {
    out.cover_note = "space has more than " + std::to_string(options.join_limit) + " points";
  } else {
    try {
      out.cover = cover_entropy(bundle.space, bundle.map, nc.cover, bundle.spec.horizon, eo);
    } catch (const BudgetError& e) {
      out.cover_note = e.what();
    }
  }
  out.separated = sep_entropy(bundle.space, bundle.map, bundle.spec.eps, bundle.spec.horizon, eo);
  return out;
}

DimEstimate dimension_table(const SystemBundle& bundle, const AnalysisOptions& options) {
  return box_dim_estimate(bundle.space, bundle.dim_scales, mode_for(bundle, options), options.node_budget);
}

std::vector<IdentityCheck> identity_checks(const SystemBundle& bundle, double lipschitz,
                                           const std::vector<CoverRates>& covers, const AnalysisOptions& options) {
  std::vector<IdentityCheck> out;
  Tally mono("monotonicity", "delta_{n+1}(f,U) <= delta_n(f,U)");
  Tally bound("lipschitz_finite_bound", "delta_n(f,U) >= delta(U) * max(L(f),1)^-(n-1)");
  const double L = std::max(lipschitz, 1.0);
  for (const auto& c : covers) {
    const auto& s = c.sequence;
    for (std::size_t n = 1; n < s.horizon(); ++n) mono.at_least(seq_value(s, n), seq_value(s, n + 1));
    if (s.capped[0]) continue;
    for (std::size_t n = 1; n <= s.horizon(); ++n)
      bound.at_least(seq_value(s, n), s.values[0] * std::pow(L, -static_cast<double>(n - 1)));
  }
  out.push_back(mono.done());
  out.push_back(bound.done());

  const std::size_t top = std::min<std::size_t>(bundle.spec.horizon, 4);
  if (bundle.space.size() > options.join_limit || top < 2) {
    const std::string note = top < 2 ? "horizon below 2"
                                     : "space has more than " + std::to_string(options.join_limit) + " points";
    for (const auto& [name, statement] : {std::pair{"join_formula", "delta(U v f^-1 W) = min(delta(U), delta(f^-1 W)) for W = U_f^k"},
                                          std::pair{"running_min_vs_direct", "delta(U_f^n) = min_{k<n} delta(f^-k U)"},
                                          std::pair{"power_identity", "delta_m(f^n, U_f^n) = delta_mn(f, U)"},
                                          std::pair{"power_inequality", "delta_m(f^n, U) >= delta_mn(f, U)"}})
      out.push_back(Tally(name, statement).skipped(note));
    return out;
  }
  auto joined = join_identities(bundle, coarsest(bundle).cover, top, options);
  out.insert(out.end(), joined.begin(), joined.end());
  return out;
}

std::vector<IdentityCheck> identity_checks(const SystemBundle& bundle, const AnalysisOptions& options) {
  return identity_checks(bundle, lipschitz_constant(bundle.space, bundle.map), cover_rates(bundle, options), options);
}

bool Analysis::failed() const {
  if (inequalities.any_failed()) return true;
  return std::any_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.status == "fail"; });
}

Analysis analyze_rates(const SystemBundle& bundle, const AnalysisOptions& options) {
  Analysis a;
  a.covers = cover_rates(bundle, options);
  // h_L estimates come from the finest radius that has a usable window.
  const CoverRates* finest = nullptr;
  for (const auto& c : a.covers)
    if (c.estimate && (!finest || c.radius < finest->radius)) finest = &c;
  if (finest) {
    a.h_L_lower = finest->estimate->lower;
    a.h_L_upper = finest->estimate->upper;
    a.finest_radius = finest->radius;
  }

  const auto& nc = coarsest(bundle);
  a.hl_delta_cover = nc.id;
  if (bundle.space.size() > options.join_limit) {
    a.hl_delta_note = "space has more than " + std::to_string(options.join_limit) + " points";
  } else {
    try {
      a.hl_delta = hl_delta_estimate(bundle.space, bundle.map, nc.cover, bundle.spec.horizon, options.node_budget,
                                     options.window);
    } catch (const BudgetError& e) {
      a.hl_delta_note = e.what();
    } catch (const UsageError& e) {
      a.hl_delta_note = e.what();
    }
  }

  a.lipschitz = lipschitz_rates(bundle);
  return a;
}

Analysis analyze(const SystemBundle& bundle, const AnalysisOptions& options) {
  Analysis a = analyze_rates(bundle, options);
  a.entropy = entropy_tables(bundle, options);
  a.dims = dimension_table(bundle, options);
  try {
    a.preimage = lbd_lower_bound(bundle.space, bundle.map, bundle.spec.horizon);
  } catch (const UsageError& e) {
    a.preimage_note = e.what();
  }
  a.identities = identity_checks(bundle, a.lipschitz.lipschitz, a.covers, options);

  auto& m = a.measured;
  m.dimb = Measured{a.dims.slope, "estimate"};
  if (a.h_L_lower) m.h_L_lower = Measured{*a.h_L_lower, "estimate"};
  if (a.h_L_upper) m.h_L_upper = Measured{*a.h_L_upper, "estimate"};
  if (a.hl_delta) m.h_L_delta = Measured{a.hl_delta->estimate.lower, "exact"};
  if (a.entropy.cover)
    m.h_cover = Measured{a.entropy.cover->estimate.slope, a.entropy.cover->upper_bound ? "greedy-upper" : "exact"};
  if (!a.entropy.separated.empty()) {
    const auto& finest_eps = *std::min_element(a.entropy.separated.begin(), a.entropy.separated.end(),
                                               [](const auto& x, const auto& y) { return x.eps < y.eps; });
    m.h_separated = Measured{finest_eps.estimate.slope, finest_eps.lower_bound ? "greedy-lower" : "exact"};
  }
  m.lipschitz = Measured{a.lipschitz.lipschitz, "exact"};
  m.l = Measured{a.lipschitz.iterate.l, "estimate"};
  a.inequalities = verify_inequalities(m, bundle.known, options.verify);
  return a;
}

}  // namespace lebdyn
