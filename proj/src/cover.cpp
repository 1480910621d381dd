#include "lebdyn/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lebdyn/errors.hpp"
#include "lebdyn/metric_core.hpp"

namespace lebdyn {

Cover::Cover(std::size_t universe, std::vector<Bits> members) : universe_(universe), members_(std::move(members)) {
  for (const auto& m : members_)
    if (m.size() != universe_) throw UsageError("cover member over a different universe");
}

Cover Cover::from_sets(std::size_t universe, const std::vector<PointSet>& members) {
  std::vector<Bits> bits;
  bits.reserve(members.size());
  for (const auto& s : members) {
    if (!s.empty() && s.back() >= universe)
      throw UsageError("cover member point " + std::to_string(s.back()) + " out of range");
    bits.push_back(s.to_bits(universe));
  }
  return Cover(universe, std::move(bits));
}

Cover Cover::whole(std::size_t universe) {
  Bits all(universe);
  all.set();
  return Cover(universe, {all});
}

std::vector<PointSet> Cover::member_sets() const {
  std::vector<PointSet> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(PointSet::from_bits(m));
  return out;
}

bool Cover::whole_space_member() const {
  return std::any_of(members_.begin(), members_.end(), [&](const Bits& m) { return m.count() == universe_; });
}

std::vector<CoverViolation> validate_cover(const FiniteMetricSpace& space, const Cover& cover) {
  std::vector<CoverViolation> out;
  if (cover.universe() != space.size()) {
    out.push_back({"universe_mismatch", {}, std::nullopt});
    return out;
  }
  Bits covered(space.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover.member(i).none()) out.push_back({"empty_member", {}, i});
    covered |= cover.member(i);
  }
  if (covered.count() != space.size()) {
    covered.flip();
    out.push_back({"uncovered", PointSet::from_bits(covered), std::nullopt});
  }
  return out;
}

void require_valid_cover(const FiniteMetricSpace& space, const Cover& cover) {
  const auto v = validate_cover(space, cover);
  if (v.empty()) return;
  std::string msg = "invalid cover: " + v.front().kind;
  if (v.front().member) msg += " (member " + std::to_string(*v.front().member) + ")";
  if (!v.front().points.empty()) msg += " (first point " + std::to_string(v.front().points.front()) + ")";
  throw UsageError(msg);
}

namespace {

// Member indices containing each point, in CSR form.
struct Incidence {
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> member;

  Incidence(const Cover& cover) : offset(cover.universe() + 1, 0) {
    for (const auto& m : cover.members())
      for (auto p = m.find_first(); p != Bits::npos; p = m.find_next(p)) ++offset[p + 1];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    member.resize(offset.back());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t i = 0; i < cover.size(); ++i) {
      const auto& m = cover.member(i);
      for (auto p = m.find_first(); p != Bits::npos; p = m.find_next(p)) member[fill[p]++] = i;
    }
  }

  [[nodiscard]] std::span<const std::uint32_t> of(PointId x) const {
    return {member.data() + offset[x], offset[x + 1] - offset[x]};
  }
};

ExtReal delta_at(const FiniteMetricSpace& space, const Cover& cover, std::span<const std::uint32_t> containing,
                 PointId x, std::vector<std::uint32_t>& alive, std::vector<std::uint32_t>& next) {
  alive.assign(containing.begin(), containing.end());
  if (alive.empty()) return ExtReal(0.0);
  for (PointId y : space.neighbors(x)) {
    next.clear();
    for (auto i : alive)
      if (cover.member(i).test(y)) next.push_back(i);
    if (next.empty()) return ExtReal(space.dist(x, y));
    alive.swap(next);
  }
  if (!space.neighbors_complete()) {
    // The walk would stop at the largest distance from x to the complement of a surviving member.
    std::vector<double> d(space.size());
    for (PointId y = 0; y < space.size(); ++y) d[y] = space.dist(x, y);
    double best = 0.0;
    for (auto i : alive) {
      const Bits& m = cover.member(i);
      double gap = std::numeric_limits<double>::infinity();
      for (PointId y = 0; y < space.size(); ++y)
        if (!m.test(y)) gap = std::min(gap, d[y]);
      if (std::isinf(gap)) return ExtReal::infinity();
      best = std::max(best, gap);
    }
    return ExtReal(best);
  }
  // Every other point lies in some surviving member.
  double best = 0.0;
  for (auto i : alive) {
    const ExtReal d = dist_to_complement(space, cover.member(i), x);
    if (d.is_infinite()) return d;
    best = std::max(best, d.value());
  }
  return ExtReal(best);
}

}  // namespace

ExtReal lebesgue_at_point(const FiniteMetricSpace& space, const Cover& cover, PointId x) {
  require_valid_cover(space, cover);
  space.check_point(x);
  std::vector<std::uint32_t> containing, alive, next;
  for (std::uint32_t i = 0; i < cover.size(); ++i)
    if (cover.member(i).test(x)) containing.push_back(i);
  return delta_at(space, cover, containing, x, alive, next);
}

LebesgueReport lebesgue_number(const FiniteMetricSpace& space, const Cover& cover, bool keep_per_point) {
  require_valid_cover(space, cover);
  LebesgueReport rep;
  if (cover.whole_space_member()) {
    rep.delta = space.diameter();
    rep.capped = true;
    rep.argmin_point = 0;
    if (keep_per_point) rep.per_point.assign(space.size(), ExtReal::infinity());
    return rep;
  }
  const Incidence inc(cover);
  std::vector<std::uint32_t> alive, next;
  double best = std::numeric_limits<double>::infinity();
  for (PointId x = 0; x < space.size(); ++x) {
    const ExtReal d = delta_at(space, cover, inc.of(x), x, alive, next);
    if (keep_per_point) rep.per_point.push_back(d);
    if (!d.is_infinite() && d.value() < best) {
      best = d.value();
      rep.argmin_point = x;
    }
  }
  rep.delta = best;
  return rep;
}

Cover join(const FiniteMetricSpace& space, const Cover& a, const Cover& b) {
  if (a.universe() != space.size() || b.universe() != space.size())
    throw UsageError("join: covers over different spaces");
  const Incidence inc(b);
  std::vector<Bits> out;
  std::vector<char> seen(b.size(), 0);
  std::vector<std::uint32_t> cand;
  for (const auto& u : a.members()) {
    cand.clear();
    for (auto p = u.find_first(); p != Bits::npos; p = u.find_next(p))
      for (auto j : inc.of(static_cast<PointId>(p)))
        if (!seen[j]) {
          seen[j] = 1;
          cand.push_back(j);
        }
    std::sort(cand.begin(), cand.end());
    for (auto j : cand) {
      seen[j] = 0;
      out.push_back(u & b.member(j));
    }
  }
  return Cover(space.size(), std::move(out));
}

bool is_finer(const Cover& a, const Cover& b) {
  if (a.universe() != b.universe()) throw UsageError("is_finer: covers over different spaces");
  return std::all_of(a.members().begin(), a.members().end(), [&](const Bits& u) {
    return std::any_of(b.members().begin(), b.members().end(), [&](const Bits& v) { return u.is_subset_of(v); });
  });
}

double cover_diam(const FiniteMetricSpace& space, const Cover& cover) {
  double best = 0.0;
  std::vector<PointId> pts;
  for (const auto& m : cover.members()) {
    pts.clear();
    for (auto p = m.find_first(); p != Bits::npos; p = m.find_next(p)) pts.push_back(static_cast<PointId>(p));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, space.dist(pts[i], pts[j]));
  }
  return best;
}

Cover dedup_members(const Cover& cover) {
  const auto& ms = cover.members();
  std::vector<std::size_t> order(ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ms[i] < ms[j]; });
  std::vector<char> keep(ms.size(), 1);
  for (std::size_t k = 1; k < order.size(); ++k)
    if (ms[order[k]] == ms[order[k - 1]]) keep[order[k]] = 0;
  std::vector<Bits> out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (keep[i]) out.push_back(ms[i]);
  return Cover(cover.universe(), std::move(out));
}

Cover maximal_members(const Cover& cover) {
  const Cover unique = dedup_members(cover);
  const auto& ms = unique.members();
  std::vector<std::size_t> order(ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return ms[i].count() > ms[j].count(); });
  // Kept members indexed by each of their points, so a candidate is only
  // compared with kept members sharing its first point.
  std::vector<std::vector<std::size_t>> by_point(cover.universe());
  std::vector<char> keep(ms.size(), 0);
  for (std::size_t i : order) {
    const auto first = ms[i].find_first();
    if (first == Bits::npos) continue;
    bool dominated = false;
    for (std::size_t k : by_point[first])
      if (ms[i].is_subset_of(ms[k])) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    keep[i] = 1;
    for (auto p = ms[i].find_first(); p != Bits::npos; p = ms[i].find_next(p)) by_point[p].push_back(i);
  }
  std::vector<Bits> out;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (keep[i]) out.push_back(ms[i]);
  return Cover(cover.universe(), std::move(out));
}

Cover mesh_cover(const FiniteMetricSpace& space, double r) {
  if (!(r > 0.0)) throw UsageError("mesh_cover: radius must be positive");
  std::vector<Bits> balls;
  balls.reserve(space.size());
  for (PointId x = 0; x < space.size(); ++x) balls.push_back(ball_bits(space, x, r));
  return dedup_members(Cover(space.size(), std::move(balls)));
}

SubcoverResult min_subcover(const FiniteMetricSpace& space, const Cover& cover, SolveMode mode,
                            std::size_t node_budget) {
  require_valid_cover(space, cover);
  const auto sol = solve_set_cover(cover.members(), mode, node_budget);
  SubcoverResult out;
  out.size = sol.chosen.size();
  out.indices = sol.chosen;
  out.exact = sol.exact;
  std::vector<Bits> w;
  for (std::size_t i : sol.chosen) w.push_back(cover.member(i));
  out.witness = Cover(cover.universe(), std::move(w));
  return out;
}

DeltaResult delta_minimal_subcovers(const FiniteMetricSpace& space, const Cover& cover, std::size_t node_budget) {
  require_valid_cover(space, cover);
  const auto smin = min_subcover(space, cover, SolveMode::exact, node_budget);
  DeltaResult out;
  out.min_size = smin.size;
  const auto all = enumerate_set_covers_of_size(cover.members(), smin.size, node_budget);
  out.subcovers_examined = all.size();
  bool first = true;
  for (const auto& idx : all) {
    std::vector<Bits> w;
    for (std::size_t i : idx) w.push_back(cover.member(i));
    const auto rep = lebesgue_number(space, Cover(cover.universe(), std::move(w)));
    if (first || (rep.capped && !out.capped) || (rep.capped == out.capped && rep.delta > out.delta)) {
      out.delta = rep.delta;
      out.capped = rep.capped;
      out.witness = idx;
      first = false;
    }
  }
  return out;
}

}  // namespace lebdyn
