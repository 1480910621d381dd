#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lebdyn/point_set.hpp"

namespace lebdyn {

enum class SolveMode { exact, greedy };

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

struct SetCoverSolution {
  std::vector<std::size_t> chosen;  // indices into the input family, ascending
  bool exact = false;
  std::size_t nodes = 0;
};

/// Largest-uncovered-gain greedy; ties go to the lowest index.
/// All sets must share one universe size and jointly cover it.
[[nodiscard]] SetCoverSolution greedy_set_cover(std::span<const Bits> sets);

/// Branch-and-bound minimum set cover with a greedy warm start.
/// Throws BudgetError once more than `node_budget` search nodes are expanded.
[[nodiscard]] SetCoverSolution exact_set_cover(std::span<const Bits> sets,
                                               std::size_t node_budget = kDefaultNodeBudget);

[[nodiscard]] SetCoverSolution solve_set_cover(std::span<const Bits> sets, SolveMode mode,
                                               std::size_t node_budget = kDefaultNodeBudget);

/// Every subfamily of exactly `size` sets that covers the universe, each
/// reported once as ascending indices, in lexicographic order.
[[nodiscard]] std::vector<std::vector<std::size_t>> enumerate_set_covers_of_size(
    std::span<const Bits> sets, std::size_t size, std::size_t node_budget = kDefaultNodeBudget);

struct IndependentSetSolution {
  PointSet members;
  bool exact = false;
  std::size_t nodes = 0;
};

/// Lowest-index-first maximal independent set; `conflict(u, v)` is queried
/// only for u < v.
[[nodiscard]] IndependentSetSolution greedy_independent_set(
    std::size_t n, const std::function<bool(PointId, PointId)>& conflict);

/// Maximum independent set of the conflict graph (adjacency bitsets, no
/// self loops). Returns the lexicographically least maximum set.
[[nodiscard]] IndependentSetSolution exact_independent_set(std::span<const Bits> adjacency,
                                                           std::size_t node_budget = kDefaultNodeBudget);

}  // namespace lebdyn
