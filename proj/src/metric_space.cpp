#include "lebdyn/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "lebdyn/errors.hpp"

namespace lebdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

struct FiniteMetricSpace::NeighborCache {
  std::once_flag once;
  std::size_t stride = 0;
  bool complete = true;
  std::vector<PointId> ids;
};

std::size_t metric_point_count(const Metric& metric) {
  return std::visit(
      overloaded{
          [](const MatrixMetric& m) { return m.n; },
          [](const EuclideanMetric& m) { return m.dim == 0 ? std::size_t{0} : m.coords.size() / m.dim; },
          [](const AnchoredLineMetric& m) { return m.anchor.size(); },
          [](const CircleMetric& m) { return m.positions.size(); },
          [](const WordMetric& m) { return static_cast<std::size_t>(ipow(m.alphabet, m.length)); },
          [](const MaxProductMetric& m) {
            return (m.left && m.right) ? m.left->size() * m.right->size() : std::size_t{0};
          },
      },
      metric);
}

FiniteMetricSpace::FiniteMetricSpace(Metric metric, std::vector<std::string> labels, double scale,
                                     std::size_t cache_threshold)
    : metric_(std::move(metric)),
      labels_(std::move(labels)),
      scale_(scale),
      cache_threshold_(cache_threshold),
      neighbors_(std::make_shared<NeighborCache>()) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw UsageError("metric scale must be positive and finite");
  n_ = metric_point_count(metric_);
  if (n_ == 0) throw UsageError("a metric space needs at least one point");
  std::visit(overloaded{
                 [&](const MatrixMetric& m) {
                   if (m.values.size() != m.n * m.n) throw UsageError("distance matrix must be n*n");
                 },
                 [&](const EuclideanMetric& m) {
                   if (m.dim == 0 || m.coords.size() % m.dim != 0)
                     throw UsageError("euclidean coordinates must be a multiple of dim");
                 },
                 [&](const AnchoredLineMetric& m) {
                   if (m.offset.size() != m.anchor.size())
                     throw UsageError("anchored line needs one offset per anchor");
                 },
                 [&](const CircleMetric& m) {
                   if (m.modulus <= 0 || !(m.circumference > 0.0))
                     throw UsageError("circle metric needs positive modulus and circumference");
                 },
                 [&](const WordMetric& m) {
                   if (m.alphabet < 2 || m.length < 1 || m.length > 62)
                     throw UsageError("word metric needs alphabet >= 2 and 1 <= length <= 62");
                 },
                 [&](const MaxProductMetric& m) {
                   if (!m.left || !m.right) throw UsageError("product metric needs both factors");
                 },
             },
             metric_);
  if (!labels_.empty() && labels_.size() != n_) throw UsageError("label count must match point count");

  if (n_ <= cache_threshold_) {
    auto mat = std::make_shared<std::vector<double>>(n_ * n_, 0.0);
    for (PointId i = 0; i < n_; ++i) {
      for (PointId j = i + 1; j < n_; ++j) {
        const double d = scale_ * raw_dist(i, j);
        (*mat)[i * n_ + j] = d;
        (*mat)[j * n_ + i] = d;
      }
    }
    // Matrix metrics keep their own diagonal and asymmetries so validation can see them.
    if (const auto* m = std::get_if<MatrixMetric>(&metric_)) {
      for (std::size_t k = 0; k < n_ * n_; ++k) (*mat)[k] = scale_ * m->values[k];
    }
    matrix_ = std::move(mat);
  }

  if (const auto* p = std::get_if<MaxProductMetric>(&metric_)) {
    if (!matrix_ && p->left->cached() && p->right->cached()) {
      left_matrix_ = p->left->matrix_data();
      right_matrix_ = p->right->matrix_data();
      left_n_ = p->left->size();
      right_n_ = p->right->size();
    }
    diameter_ = scale_ * std::max(p->left->diameter(), p->right->diameter());
    const double ml = p->left->min_positive_distance();
    const double mr = p->right->min_positive_distance();
    if (p->left->size() > 1 && p->right->size() > 1) {
      min_positive_ = scale_ * std::min(ml, mr);
    } else {
      min_positive_ = scale_ * std::max(ml, mr);
    }
    return;
  }

  double diam = 0.0;
  double minpos = 0.0;
  for (PointId i = 0; i < n_; ++i) {
    for (PointId j = i + 1; j < n_; ++j) {
      const double d = std::max(dist(i, j), dist(j, i));
      diam = std::max(diam, d);
      const double lo = std::min(dist(i, j), dist(j, i));
      if (lo > 0.0 && (minpos == 0.0 || lo < minpos)) minpos = lo;
    }
  }
  diameter_ = diam;
  min_positive_ = minpos;
}

double FiniteMetricSpace::raw_dist(PointId x, PointId y) const {
  if (x == y && !std::holds_alternative<MatrixMetric>(metric_)) return 0.0;
  return std::visit(
      overloaded{
          [&](const MatrixMetric& m) { return m.values[x * m.n + y]; },
          [&](const EuclideanMetric& m) {
            if (m.dim == 1) return std::abs(m.coords[x] - m.coords[y]);
            double s = 0.0;
            for (std::size_t k = 0; k < m.dim; ++k) {
              const double t = m.coords[x * m.dim + k] - m.coords[y * m.dim + k];
              s += t * t;
            }
            return std::sqrt(s);
          },
          [&](const AnchoredLineMetric& m) {
            if (m.anchor[x] == m.anchor[y]) return std::abs(m.offset[x] - m.offset[y]);
            return std::abs((m.anchor[x] - m.anchor[y]) + (m.offset[x] - m.offset[y]));
          },
          [&](const CircleMetric& m) {
            std::int64_t k = (m.positions[x] - m.positions[y]) % m.modulus;
            if (k < 0) k += m.modulus;
            k = std::min(k, m.modulus - k);
            return static_cast<double>(k) * m.circumference / static_cast<double>(m.modulus);
          },
          [&](const WordMetric& m) {
            std::uint64_t a = x;
            std::uint64_t b = y;
            std::uint32_t last_diff = 0;
            for (std::uint32_t pos = 0; pos < m.length; ++pos) {
              if (a % m.alphabet != b % m.alphabet) last_diff = pos;
              a /= m.alphabet;
              b /= m.alphabet;
            }
            // digits were read least-significant first; convert to the position from the front
            const std::uint32_t first = m.length - 1 - last_diff;
            return std::ldexp(1.0, -static_cast<int>(first));
          },
          [&](const MaxProductMetric& m) {
            const auto nr = static_cast<PointId>(m.right->size());
            return std::max(m.left->dist(x / nr, y / nr), m.right->dist(x % nr, y % nr));
          },
      },
      metric_);
}

double FiniteMetricSpace::dist(PointId x, PointId y) const {
  if (matrix_) return (*matrix_)[static_cast<std::size_t>(x) * n_ + y];
  if (left_matrix_) {
    const std::size_t xl = x / right_n_, yl = y / right_n_;
    const std::size_t xr = x % right_n_, yr = y % right_n_;
    return scale_ * std::max(left_matrix_[xl * left_n_ + yl], right_matrix_[xr * right_n_ + yr]);
  }
  return scale_ * raw_dist(x, y);
}

void FiniteMetricSpace::check_point(PointId x) const {
  if (x >= n_) throw UsageError("point id " + std::to_string(x) + " out of range (size " + std::to_string(n_) + ")");
}

void FiniteMetricSpace::build_neighbors() const {
  std::call_once(neighbors_->once, [this] {
    auto& cache = *neighbors_;
    const bool complete = n_ <= cache_threshold_ || n_ - 1 <= truncated_neighbors;
    const std::size_t stride = complete ? n_ - 1 : truncated_neighbors;
    cache.stride = stride;
    cache.complete = complete;
    cache.ids.resize(n_ * stride);
    std::vector<PointId> order(n_ - 1);
    std::vector<double> d(n_);
    for (PointId x = 0; x < n_; ++x) {
      for (PointId y = 0; y < n_; ++y) d[y] = dist(x, y);
      std::size_t k = 0;
      for (PointId y = 0; y < n_; ++y)
        if (y != x) order[k++] = y;
      auto less = [&](PointId a, PointId b) { return d[a] < d[b] || (d[a] == d[b] && a < b); };
      if (stride < order.size()) {
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(stride), order.end(), less);
      }
      std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(stride), less);
      std::copy_n(order.begin(), stride, cache.ids.begin() + static_cast<std::ptrdiff_t>(x * stride));
    }
  });
}

std::span<const PointId> FiniteMetricSpace::neighbors(PointId x) const {
  check_point(x);
  build_neighbors();
  const auto& cache = *neighbors_;
  return {cache.ids.data() + static_cast<std::size_t>(x) * cache.stride, cache.stride};
}

bool FiniteMetricSpace::neighbors_complete() const {
  build_neighbors();
  return neighbors_->complete;
}

FiniteMetricSpace line_space(std::vector<double> xs) {
  EuclideanMetric m;
  m.dim = 1;
  m.coords = std::move(xs);
  return FiniteMetricSpace(std::move(m));
}

FiniteMetricSpace anchored_line(std::vector<double> anchor, std::vector<double> offset) {
  return FiniteMetricSpace(AnchoredLineMetric{std::move(anchor), std::move(offset)});
}

FiniteMetricSpace matrix_space(std::size_t n, std::vector<double> row_major) {
  return FiniteMetricSpace(MatrixMetric{n, std::move(row_major)});
}

FiniteMetricSpace circle_grid(std::int64_t modulus, double circumference) {
  CircleMetric m;
  m.modulus = modulus;
  m.circumference = circumference;
  m.positions.resize(static_cast<std::size_t>(modulus));
  std::iota(m.positions.begin(), m.positions.end(), std::int64_t{0});
  return FiniteMetricSpace(std::move(m));
}

FiniteMetricSpace max_product(const FiniteMetricSpace& left, const FiniteMetricSpace& right) {
  MaxProductMetric m{std::make_shared<const FiniteMetricSpace>(left),
                     std::make_shared<const FiniteMetricSpace>(right)};
  return FiniteMetricSpace(std::move(m));
}

}  // namespace lebdyn
