#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lebdyn/metric_space.hpp"
#include "lebdyn/point_set.hpp"
#include "lebdyn/solvers.hpp"

namespace lebdyn {

/// Finite family of point sets over a universe of `universe()` points.
/// Member order is kept (it gives members stable ids) but no computed value depends on it.
class Cover {
 public:
  Cover() = default;
  Cover(std::size_t universe, std::vector<Bits> members);
  static Cover from_sets(std::size_t universe, const std::vector<PointSet>& members);
  /// The one-member cover {X}.
  static Cover whole(std::size_t universe);

  [[nodiscard]] std::size_t universe() const noexcept { return universe_; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] const std::vector<Bits>& members() const noexcept { return members_; }
  [[nodiscard]] const Bits& member(std::size_t i) const { return members_.at(i); }
  [[nodiscard]] PointSet member_set(std::size_t i) const { return PointSet::from_bits(members_.at(i)); }
  [[nodiscard]] std::vector<PointSet> member_sets() const;
  [[nodiscard]] bool whole_space_member() const;

 private:
  std::size_t universe_ = 0;
  std::vector<Bits> members_;
};

struct CoverViolation {
  std::string kind;  // "uncovered" | "empty_member" | "universe_mismatch"
  PointSet points;   // uncovered points, or empty
  std::optional<std::size_t> member;
};

[[nodiscard]] std::vector<CoverViolation> validate_cover(const FiniteMetricSpace& space, const Cover& cover);
/// Throws UsageError naming the first violation.
void require_valid_cover(const FiniteMetricSpace& space, const Cover& cover);

/// delta(U, x) = max over members containing x of the distance from x to the member's complement.
[[nodiscard]] ExtReal lebesgue_at_point(const FiniteMetricSpace& space, const Cover& cover, PointId x);

struct LebesgueReport {
  double delta = 0.0;  // capped at the diameter when `capped`
  bool capped = false;  // some member is the whole space
  PointId argmin_point = 0;
  std::vector<ExtReal> per_point;  // filled only on request
};

[[nodiscard]] LebesgueReport lebesgue_number(const FiniteMetricSpace& space, const Cover& cover,
                                             bool keep_per_point = false);

/// All nonempty pairwise intersections, ordered by (index in a, index in b).
[[nodiscard]] Cover join(const FiniteMetricSpace& space, const Cover& a, const Cover& b);

/// Each member of a lies inside some member of b.
[[nodiscard]] bool is_finer(const Cover& a, const Cover& b);

[[nodiscard]] double cover_diam(const FiniteMetricSpace& space, const Cover& cover);

/// Open balls of radius r around every point, duplicates removed (first occurrence kept).
[[nodiscard]] Cover mesh_cover(const FiniteMetricSpace& space, double r);

/// Drops duplicate members (first occurrence kept).
[[nodiscard]] Cover dedup_members(const Cover& cover);
/// Keeps only inclusion-maximal members, one copy each. Lebesgue numbers,
/// minimal subcover sizes and Delta are unchanged by this reduction.
[[nodiscard]] Cover maximal_members(const Cover& cover);

struct SubcoverResult {
  std::size_t size = 0;
  std::vector<std::size_t> indices;  // members of the input cover
  Cover witness;
  bool exact = false;
};

[[nodiscard]] SubcoverResult min_subcover(const FiniteMetricSpace& space, const Cover& cover, SolveMode mode,
                                          std::size_t node_budget = kDefaultNodeBudget);

struct DeltaResult {
  double delta = 0.0;  // capped at the diameter when `capped`
  bool capped = false;
  std::size_t min_size = 0;               // S(U)
  std::size_t subcovers_examined = 0;
  std::vector<std::size_t> witness;       // indices of a maximising minimum subcover
};

/// Largest Lebesgue number over all minimum-cardinality subcovers.
/// Throws BudgetError when the enumeration exceeds the budget; use the
/// lower/upper decay rates of delta_n instead in that case.
[[nodiscard]] DeltaResult delta_minimal_subcovers(const FiniteMetricSpace& space, const Cover& cover,
                                                  std::size_t node_budget = kDefaultNodeBudget);

}  // namespace lebdyn
