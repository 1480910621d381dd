#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace lebdyn {

using PointId = std::uint32_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Sorted, duplicate-free list of point ids of one space.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<PointId> ids);
  explicit PointSet(std::vector<PointId> ids);

  static PointSet from_bits(const Bits& bits);
  static PointSet range(std::size_t n);

  [[nodiscard]] const std::vector<PointId>& ids() const noexcept { return ids_; }
  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
  [[nodiscard]] bool contains(PointId x) const;
  [[nodiscard]] PointId front() const { return ids_.front(); }
  [[nodiscard]] PointId back() const { return ids_.back(); }

  [[nodiscard]] auto begin() const noexcept { return ids_.begin(); }
  [[nodiscard]] auto end() const noexcept { return ids_.end(); }

  /// Bitset over a universe of `n` points.
  [[nodiscard]] Bits to_bits(std::size_t n) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.ids_ <=> b.ids_; }

 private:
  std::vector<PointId> ids_;
};

[[nodiscard]] bool is_subset(const PointSet& a, const PointSet& b);

/// Extended non-negative real: a finite value or the +infinity sentinel.
/// The sentinel never takes part in arithmetic; callers must branch on it.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr explicit ExtReal(double v) : value_(v) {}

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  [[nodiscard]] constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; throws std::logic_error on the sentinel.
  [[nodiscard]] double value() const;
  [[nodiscard]] constexpr double value_or(double cap) const noexcept {
    return infinite_ ? cap : value_;
  }

  friend constexpr bool operator==(const ExtReal&, const ExtReal&) = default;
  friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace lebdyn
