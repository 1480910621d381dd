#include "lebdyn/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lebdyn/errors.hpp"

namespace lebdyn {

std::vector<SpaceViolation> validate_space(const FiniteMetricSpace& space, const ValidationOptions& options) {
  std::vector<SpaceViolation> out;
  const auto n = static_cast<PointId>(space.size());
  auto report = [&](SpaceViolation v) {
    if (out.size() < options.max_reported) out.push_back(std::move(v));
  };

  for (PointId x = 0; x < n; ++x) {
    const double dxx = space.dist(x, x);
    if (dxx != 0.0) report({"zero_diagonal", {x}, dxx});
    for (PointId y = x + 1; y < n; ++y) {
      const double a = space.dist(x, y);
      const double b = space.dist(y, x);
      if (!std::isfinite(a) || !std::isfinite(b)) {
        report({"nonfinite", {x, y}, 0.0});
        continue;
      }
      if (a != b) report({"symmetry", {x, y}, std::abs(a - b)});
      if (!(a > 0.0) || !(b > 0.0)) report({"positivity", {x, y}, std::min(a, b)});
    }
  }

  const double slack = kTriangleTolerance * space.diameter();
  auto check = [&](PointId x, PointId y, PointId z) {
    const double excess = space.dist(x, z) - (space.dist(x, y) + space.dist(y, z));
    if (excess > slack) report({"triangle", {x, y, z}, excess});
  };
  if (space.size() <= options.exhaustive_triangle_limit) {
    for (PointId x = 0; x < n; ++x)
      for (PointId z = x + 1; z < n; ++z)
        for (PointId y = 0; y < n; ++y)
          if (y != x && y != z) check(x, y, z);
  } else {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<PointId> pick(0, n - 1);
    for (std::size_t t = 0; t < options.sampled_triples; ++t) {
      const PointId x = pick(rng), y = pick(rng), z = pick(rng);
      if (x != y && y != z && x != z) check(x, y, z);
    }
  }
  return out;
}

Bits ball_bits(const FiniteMetricSpace& space, PointId center, double radius) {
  space.check_point(center);
  if (radius < 0.0) throw UsageError("ball radius must be nonnegative");
  Bits b(space.size());
  for (PointId y = 0; y < space.size(); ++y)
    if (space.dist(center, y) < radius) b.set(y);
  return b;
}

PointSet ball(const FiniteMetricSpace& space, PointId center, double radius) {
  return PointSet::from_bits(ball_bits(space, center, radius));
}

ExtReal dist_to_complement(const FiniteMetricSpace& space, const Bits& s, PointId x) {
  space.check_point(x);
  if (!s.test(x)) return ExtReal(0.0);
  if (s.count() == space.size()) return ExtReal::infinity();
  for (PointId y : space.neighbors(x))
    if (!s.test(y)) return ExtReal(space.dist(x, y));
  // Truncated neighbour list exhausted inside s: fall back to a full scan.
  double best = std::numeric_limits<double>::infinity();
  for (PointId y = 0; y < space.size(); ++y)
    if (!s.test(y)) best = std::min(best, space.dist(x, y));
  return ExtReal(best);
}

ExtReal dist_to_complement(const FiniteMetricSpace& space, const PointSet& s, PointId x) {
  if (!s.empty() && s.back() >= space.size()) throw UsageError("point set outside the space");
  return dist_to_complement(space, s.to_bits(space.size()), x);
}

CoveringResult covering_number(const FiniteMetricSpace& space, double gamma, SolveMode mode,
                               std::size_t node_budget) {
  if (!(gamma > 0.0)) throw UsageError("covering_number: gamma must be positive");
  std::vector<Bits> balls;
  balls.reserve(space.size());
  for (PointId x = 0; x < space.size(); ++x) balls.push_back(ball_bits(space, x, gamma));
  const auto sol = solve_set_cover(balls, mode, node_budget);
  std::vector<PointId> centers;
  for (std::size_t i : sol.chosen) centers.push_back(static_cast<PointId>(i));
  return {sol.chosen.size(), PointSet(std::move(centers)), sol.exact};
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("least squares needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

DimEstimate box_dim_estimate(const FiniteMetricSpace& space, const std::vector<double>& gammas, SolveMode mode,
                             std::size_t node_budget) {
  if (gammas.size() < 3) throw UsageError("box_dim_estimate needs at least three scales");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0)) throw UsageError("box_dim_estimate: scales must be positive");
    if (i > 0 && !(gammas[i] < gammas[i - 1])) throw UsageError("box_dim_estimate: scales must decrease");
  }
  DimEstimate est;
  std::vector<double> xs, ys;
  for (double g : gammas) {
    CoveringResult c;
    SolveMode used = mode;
    try {
      c = covering_number(space, g, mode, node_budget);
    } catch (const BudgetError&) {
      c = covering_number(space, g, SolveMode::greedy);
      used = SolveMode::greedy;
    }
    est.per_scale.push_back({g, c.count, used});
    xs.push_back(-std::log(g));
    ys.push_back(std::log(static_cast<double>(c.count)));
  }
  // Monotonicity post-check: a larger gamma never needs more balls.
  for (std::size_t i = 1; i < est.per_scale.size(); ++i) {
    if (est.per_scale[i].count < est.per_scale[i - 1].count) {
      est.per_scale[i].count = est.per_scale[i - 1].count;
      ys[i] = ys[i - 1];
    }
  }
  est.slope = least_squares_slope(xs, ys);
  est.gamma_max = gammas.front();
  est.gamma_min = gammas.back();
  return est;
}

FiniteMetricSpace scale_metric(const FiniteMetricSpace& space, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("scale_metric: factor must be positive");
  return FiniteMetricSpace(space.metric(), space.labels(), space.scale() * c, space.cache_threshold());
}

}  // namespace lebdyn
