#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lebdyn/point_set.hpp"

namespace lebdyn {

class FiniteMetricSpace;

/// Explicit distance matrix, row-major n*n.
struct MatrixMetric {
  std::size_t n = 0;
  std::vector<double> values;
};

/// Points in R^dim with the Euclidean distance.
struct EuclideanMetric {
  std::size_t dim = 1;
  std::vector<double> coords;  // point-major, size = n * dim
};

/// Points on the real line written as anchor + offset. Points sharing an
/// anchor are compared through their offsets alone, so clusters much finer
/// than the anchor's floating-point resolution keep exact separations.
struct AnchoredLineMetric {
  std::vector<double> anchor;
  std::vector<double> offset;
};

/// Integer positions on Z/modulus, embedded in a circle of the given
/// circumference. Distances are computed from integer differences so that
/// rotations are exact isometries.
struct CircleMetric {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> positions;
  double circumference = 1.0;
};

/// All words of `length` symbols over `alphabet`, indexed in base-`alphabet`
/// with the first symbol most significant; d(u,v) = 2^-(first differing position).
struct WordMetric {
  std::uint32_t alphabet = 2;
  std::uint32_t length = 1;
};

/// Cartesian product with the max metric; point (i, j) has id i * |right| + j.
struct MaxProductMetric {
  std::shared_ptr<const FiniteMetricSpace> left;
  std::shared_ptr<const FiniteMetricSpace> right;
};

using Metric =
    std::variant<MatrixMetric, EuclideanMetric, AnchoredLineMetric, CircleMetric, WordMetric, MaxProductMetric>;

/// A finite metric space. Immutable after construction; copies share caches.
///
/// Distances are served from a full matrix when the space has at most
/// `cache_threshold` points and evaluated on demand otherwise. Neighbour
/// lists sorted by distance are built lazily on first use (truncated to
/// `truncated_neighbors` entries for uncached spaces).
class FiniteMetricSpace {
 public:
  static constexpr std::size_t default_cache_threshold = 2048;
  static constexpr std::size_t truncated_neighbors = 512;

  explicit FiniteMetricSpace(Metric metric, std::vector<std::string> labels = {},
                             double scale = 1.0,
                             std::size_t cache_threshold = default_cache_threshold);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double dist(PointId x, PointId y) const;
  [[nodiscard]] double diameter() const noexcept { return diameter_; }
  /// Smallest distance between distinct points; 0 for a one-point space.
  [[nodiscard]] double min_positive_distance() const noexcept { return min_positive_; }
  [[nodiscard]] double scale() const noexcept { return scale_; }
  [[nodiscard]] const Metric& metric() const noexcept { return metric_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] bool cached() const noexcept { return matrix_ != nullptr; }
  /// Row-major distance matrix, or nullptr for uncached spaces.
  [[nodiscard]] const double* matrix_data() const noexcept { return matrix_ ? matrix_->data() : nullptr; }
  [[nodiscard]] std::size_t cache_threshold() const noexcept { return cache_threshold_; }

  /// Other points ordered by increasing distance to x (ties by id).
  /// May be truncated; see neighbors_complete().
  [[nodiscard]] std::span<const PointId> neighbors(PointId x) const;
  [[nodiscard]] bool neighbors_complete() const;

  void check_point(PointId x) const;

 private:
  struct NeighborCache;

  [[nodiscard]] double raw_dist(PointId x, PointId y) const;
  void build_neighbors() const;

  Metric metric_;
  std::vector<std::string> labels_;
  double scale_ = 1.0;
  std::size_t cache_threshold_ = default_cache_threshold;
  std::size_t n_ = 0;
  double diameter_ = 0.0;
  double min_positive_ = 0.0;
  std::shared_ptr<const std::vector<double>> matrix_;
  // Uncached products of cached factors read the factor matrices directly.
  const double* left_matrix_ = nullptr;
  const double* right_matrix_ = nullptr;
  std::size_t left_n_ = 0;
  std::size_t right_n_ = 0;
  std::shared_ptr<NeighborCache> neighbors_;
};

/// Number of points a metric description defines.
[[nodiscard]] std::size_t metric_point_count(const Metric& metric);

/// Convenience constructors.
[[nodiscard]] FiniteMetricSpace line_space(std::vector<double> xs);
[[nodiscard]] FiniteMetricSpace anchored_line(std::vector<double> anchor, std::vector<double> offset);
[[nodiscard]] FiniteMetricSpace matrix_space(std::size_t n, std::vector<double> row_major);
[[nodiscard]] FiniteMetricSpace circle_grid(std::int64_t modulus, double circumference = 1.0);
[[nodiscard]] FiniteMetricSpace max_product(const FiniteMetricSpace& left, const FiniteMetricSpace& right);

}  // namespace lebdyn
