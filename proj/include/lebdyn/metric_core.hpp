#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lebdyn/metric_space.hpp"
#include "lebdyn/point_set.hpp"
#include "lebdyn/solvers.hpp"

namespace lebdyn {

/// Relative slack (times the diameter) allowed in the triangle inequality.
inline constexpr double kTriangleTolerance = 1e-9;

struct SpaceViolation {
  std::string axiom;  // "zero_diagonal" | "positivity" | "symmetry" | "triangle" | "nonfinite"
  std::vector<PointId> points;
  double excess = 0.0;
};

struct ValidationOptions {
  /// Triangle inequality is checked on every triple up to this many points,
  /// and on a deterministic sample of triples beyond it.
  std::size_t exhaustive_triangle_limit = 600;
  std::size_t sampled_triples = 2'000'000;
  std::size_t max_reported = 64;
};

[[nodiscard]] std::vector<SpaceViolation> validate_space(const FiniteMetricSpace& space,
                                                         const ValidationOptions& options = {});

/// Open ball {y : d(center, y) < radius}.
[[nodiscard]] PointSet ball(const FiniteMetricSpace& space, PointId center, double radius);
[[nodiscard]] Bits ball_bits(const FiniteMetricSpace& space, PointId center, double radius);

/// min over y outside `s` of d(x, y); the infinity sentinel when `s` is the whole space.
[[nodiscard]] ExtReal dist_to_complement(const FiniteMetricSpace& space, const PointSet& s, PointId x);
[[nodiscard]] ExtReal dist_to_complement(const FiniteMetricSpace& space, const Bits& s, PointId x);

struct CoveringResult {
  std::size_t count = 0;
  PointSet centers;
  bool exact = false;
};

/// Minimal number of open radius-gamma balls (centred at points of the space) covering it.
[[nodiscard]] CoveringResult covering_number(const FiniteMetricSpace& space, double gamma, SolveMode mode,
                                             std::size_t node_budget = kDefaultNodeBudget);

struct ScaleCount {
  double gamma = 0.0;
  std::size_t count = 0;
  SolveMode mode = SolveMode::greedy;
};

struct DimEstimate {
  std::vector<ScaleCount> per_scale;
  double slope = 0.0;  // least squares of ln N against -ln gamma
  double gamma_min = 0.0;
  double gamma_max = 0.0;
};

/// Box-counting slope over a decreasing grid of at least three scales.
/// Exact mode falls back to greedy at a scale whose search exceeds the budget.
[[nodiscard]] DimEstimate box_dim_estimate(const FiniteMetricSpace& space, const std::vector<double>& gammas,
                                           SolveMode mode, std::size_t node_budget = kDefaultNodeBudget);

/// Same points, distances multiplied by c > 0.
[[nodiscard]] FiniteMetricSpace scale_metric(const FiniteMetricSpace& space, double c);

/// Ordinary least-squares slope of y on x.
[[nodiscard]] double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lebdyn
