#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lebdyn/cover.hpp"
#include "lebdyn/metric_space.hpp"
#include "lebdyn/point_set.hpp"
#include "lebdyn/solvers.hpp"

namespace lebdyn {

/// Total self-map of a finite space in array form.
struct DynMap {
  std::vector<PointId> image;

  [[nodiscard]] std::size_t size() const noexcept { return image.size(); }
  [[nodiscard]] PointId operator()(PointId x) const { return image[x]; }
  static DynMap identity(std::size_t n);
};

/// Throws UsageError unless the map is total on the space with valid images.
void require_valid_map(const FiniteMetricSpace& space, const DynMap& map);

[[nodiscard]] DynMap map_power(const DynMap& map, std::size_t n);

/// Member-wise preimages, empty preimages dropped.
[[nodiscard]] Cover pullback_cover(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover);

inline constexpr std::size_t kDefaultMemberCap = 100'000;

struct IteratedCoverOptions {
  std::size_t member_cap = kDefaultMemberCap;
  /// Keep only inclusion-maximal members after each join (leaves delta, S and Delta unchanged).
  bool maximal_only = false;
};

/// Join of f^{-k}(U) for k = 0..n-1, duplicates removed for n >= 2.
/// Throws BudgetError once the member count exceeds the cap.
[[nodiscard]] Cover iterated_cover(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                                   std::size_t n, const IteratedCoverOptions& options = {});

/// delta_1..delta_N of one cover, plus the Lebesgue numbers of the single pullbacks f^{-k}(U).
struct RateSequence {
  std::string name;
  std::vector<double> values;  // delta_n for n = 1..N (index n-1); capped entries hold the diameter
  std::vector<bool> capped;
  std::vector<double> pullback_values;  // delta(f^{-k}(U)) for k = 0..N-1, when computed
  std::vector<bool> pullback_capped;
  double resolution_floor = 0.0;  // smallest positive distance of the space

  [[nodiscard]] std::size_t horizon() const noexcept { return values.size(); }
  /// a_n = -ln(delta_n / delta_1) / (n - 1), with a_1 = 0.
  [[nodiscard]] std::vector<double> exponents() const;
  /// Number of leading indices that are uncapped and strictly above the resolution floor.
  [[nodiscard]] std::size_t usable_horizon() const;
};

enum class DeltaMode { running_min, direct };

/// delta_n(f, U) for n = 1..N. The running-min path evaluates delta(f^{-k}(U)) once per k;
/// the direct path computes delta of the iterated cover at every n.
[[nodiscard]] RateSequence delta_sequence(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                                          std::size_t horizon, DeltaMode mode = DeltaMode::running_min,
                                          const IteratedCoverOptions& options = {});

/// max over k < n of d(f^k x, f^k y).
[[nodiscard]] double bowen_dist(const FiniteMetricSpace& space, const DynMap& map, std::size_t n, PointId x,
                                PointId y);

struct SeparatedResult {
  std::size_t count = 0;
  PointSet witness;
  bool exact = false;
};

/// Largest (n, eps)-separated set: pairwise Bowen distance strictly above eps.
[[nodiscard]] SeparatedResult max_separated(const FiniteMetricSpace& space, const DynMap& map, std::size_t n,
                                            double eps, SolveMode mode,
                                            std::size_t node_budget = kDefaultNodeBudget);

/// Smallest L with d(fx, fy) <= L d(x, y), i.e. the largest distance ratio over pairs.
[[nodiscard]] double lipschitz_constant(const FiniteMetricSpace& space, const DynMap& map);

struct IterateRate {
  double l = 0.0;  // min over n of (1/n) ln L(f^n); -inf when some power is constant
  std::vector<double> lipschitz;  // L(f^n), n = 1..N
  std::vector<double> per_n;      // (1/n) ln L(f^n)
  bool subadditive = true;        // ln L(f^(m+n)) <= ln L(f^m) + ln L(f^n) within 1e-9 for m + n <= N
};

[[nodiscard]] IterateRate iterate_rate(const FiniteMetricSpace& space, const DynMap& map, std::size_t horizon);

struct BlockLength {
  std::size_t length = 0;
  bool at_cap = false;
};

/// Largest n <= cap such that f^k(B) lies in a single member for every k < n.
[[nodiscard]] BlockLength bowen_block_length(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                                             const PointSet& block, std::size_t cap);

/// Inverse images of single points under f, in CSR form.
class Preimages {
 public:
  explicit Preimages(const DynMap& map);
  [[nodiscard]] std::span<const PointId> of(PointId y) const {
    return {ids_.data() + offset_[y], offset_[y + 1] - offset_[y]};
  }
  /// f^{-1}(s) as a bitset.
  [[nodiscard]] Bits pull(const Bits& s) const;

 private:
  std::vector<std::size_t> offset_;
  std::vector<PointId> ids_;
};

/// D(f^{-n}x, f^{-n}y): smallest distance between the n-step preimage sets;
/// the infinity sentinel when one of them is empty.
[[nodiscard]] ExtReal preimage_gap(const FiniteMetricSpace& space, const DynMap& map, std::size_t n, PointId x,
                                   PointId y);

/// Intersection of all forward images of the space.
[[nodiscard]] PointSet eventual_image(const FiniteMetricSpace& space, const DynMap& map);

struct PreimageBound {
  double lower = 0.0;  // sup over pairs of the windowed min of c_n
  double upper = 0.0;  // sup over pairs of the windowed max of c_n
  PointId x = 0;
  PointId y = 0;
  std::size_t pairs = 0;
  std::size_t window_first = 0;
  std::size_t window_last = 0;
};

/// Rates c_n = (1/n) ln(d(x,y) / D(f^{-n}x, f^{-n}y)) for pairs of the eventual image,
/// windowed over the second half of 1..N. Pairs are taken in lexicographic order
/// up to `pair_budget`. Throws UsageError when the eventual image is a single point.
[[nodiscard]] PreimageBound lbd_lower_bound(const FiniteMetricSpace& space, const DynMap& map, std::size_t horizon,
                                            std::size_t pair_budget = 2000);

}  // namespace lebdyn
