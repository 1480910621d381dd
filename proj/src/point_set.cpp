#include "lebdyn/point_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace lebdyn {

PointSet::PointSet(std::initializer_list<PointId> ids) : PointSet(std::vector<PointId>(ids)) {}

PointSet::PointSet(std::vector<PointId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

PointSet PointSet::from_bits(const Bits& bits) {
  PointSet s;
  s.ids_.reserve(bits.count());
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    s.ids_.push_back(static_cast<PointId>(i));
  }
  return s;
}

PointSet PointSet::range(std::size_t n) {
  PointSet s;
  s.ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.ids_[i] = static_cast<PointId>(i);
  return s;
}

bool PointSet::contains(PointId x) const { return std::binary_search(ids_.begin(), ids_.end(), x); }

Bits PointSet::to_bits(std::size_t n) const {
  Bits b(n);
  for (PointId x : ids_) b.set(x);
  return b;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

double ExtReal::value() const {
  if (infinite_) throw std::logic_error("ExtReal: value() on the infinity sentinel");
  return value_;
}

}  // namespace lebdyn
