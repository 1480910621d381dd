#include "lebdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lebdyn/errors.hpp"
#include "lebdyn/metric_core.hpp"

namespace lebdyn {

DynMap DynMap::identity(std::size_t n) {
  DynMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), PointId{0});
  return m;
}

void require_valid_map(const FiniteMetricSpace& space, const DynMap& map) {
  if (map.size() != space.size())
    throw UsageError("map has " + std::to_string(map.size()) + " images for " + std::to_string(space.size()) +
                     " points");
  for (PointId x = 0; x < map.size(); ++x)
    if (map.image[x] >= space.size())
      throw UsageError("map image of point " + std::to_string(x) + " out of range");
}

DynMap map_power(const DynMap& map, std::size_t n) {
  DynMap out = DynMap::identity(map.size());
  for (std::size_t k = 0; k < n; ++k)
    for (auto& y : out.image) y = map.image[y];
  return out;
}

Preimages::Preimages(const DynMap& map) : offset_(map.size() + 1, 0), ids_(map.size()) {
  for (PointId y : map.image) ++offset_[y + 1];
  std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  for (PointId x = 0; x < map.size(); ++x) ids_[fill[map.image[x]]++] = x;
}

Bits Preimages::pull(const Bits& s) const {
  Bits out(s.size());
  for (auto y = s.find_first(); y != Bits::npos; y = s.find_next(y))
    for (PointId x : of(static_cast<PointId>(y))) out.set(x);
  return out;
}

namespace {

Cover pull_members(const Preimages& pre, const Cover& cover) {
  std::vector<Bits> out;
  out.reserve(cover.size());
  for (const auto& m : cover.members()) {
    Bits p = pre.pull(m);
    if (p.any()) out.push_back(std::move(p));
  }
  return Cover(cover.universe(), std::move(out));
}

Cover reduce(const Cover& c, const IteratedCoverOptions& options) {
  Cover r = options.maximal_only ? maximal_members(c) : dedup_members(c);
  if (r.size() > options.member_cap)
    throw BudgetError("iterated cover has " + std::to_string(r.size()) + " members, above the cap of " +
                      std::to_string(options.member_cap));
  return r;
}

}  // namespace

Cover pullback_cover(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover) {
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  return pull_members(Preimages(map), cover);
}

Cover iterated_cover(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover, std::size_t n,
                     const IteratedCoverOptions& options) {
  if (n == 0) throw UsageError("iterated_cover needs n >= 1");
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  if (n == 1) return options.maximal_only ? maximal_members(cover) : cover;
  const Preimages pre(map);
  const Cover base = reduce(cover, options);
  Cover w = base;
  for (std::size_t k = 1; k < n; ++k) w = reduce(join(space, base, pull_members(pre, w)), options);
  return w;
}

std::vector<double> RateSequence::exponents() const {
  std::vector<double> a(values.size(), 0.0);
  for (std::size_t i = 1; i < values.size(); ++i)
    a[i] = -std::log(values[i] / values[0]) / static_cast<double>(i) + 0.0;
  return a;
}

std::size_t RateSequence::usable_horizon() const {
  std::size_t h = 0;
  while (h < values.size() && !capped[h] && values[h] > resolution_floor) ++h;
  return h;
}

RateSequence delta_sequence(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                            std::size_t horizon, DeltaMode mode, const IteratedCoverOptions& options) {
  if (horizon == 0) throw UsageError("delta_sequence needs a horizon of at least 1");
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  const Preimages pre(map);
  RateSequence seq;
  seq.resolution_floor = space.min_positive_distance();

  if (mode == DeltaMode::running_min) {
    Cover current = dedup_members(cover);
    ExtReal running = ExtReal::infinity();
    for (std::size_t k = 0; k < horizon; ++k) {
      if (k > 0) current = pull_members(pre, current);
      const auto rep = lebesgue_number(space, current);
      seq.pullback_values.push_back(rep.delta);
      seq.pullback_capped.push_back(rep.capped);
      if (!rep.capped && (running.is_infinite() || rep.delta < running.value())) running = ExtReal(rep.delta);
      seq.values.push_back(running.value_or(space.diameter()));
      seq.capped.push_back(running.is_infinite());
    }
    return seq;
  }

  const Cover base = reduce(cover, options);
  Cover w = base;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1) w = reduce(join(space, base, pull_members(pre, w)), options);
    const auto rep = lebesgue_number(space, w);
    seq.values.push_back(rep.delta);
    seq.capped.push_back(rep.capped);
  }
  return seq;
}

double bowen_dist(const FiniteMetricSpace& space, const DynMap& map, std::size_t n, PointId x, PointId y) {
  if (n == 0) throw UsageError("bowen_dist needs n >= 1");
  space.check_point(x);
  space.check_point(y);
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    best = std::max(best, space.dist(x, y));
    x = map(x);
    y = map(y);
  }
  return best;
}

SeparatedResult max_separated(const FiniteMetricSpace& space, const DynMap& map, std::size_t n, double eps,
                              SolveMode mode, std::size_t node_budget) {
  if (!(eps > 0.0)) throw UsageError("max_separated: eps must be positive");
  if (n == 0) throw UsageError("max_separated needs n >= 1");
  require_valid_map(space, map);
  // Orbits stored once; Bowen distances read from them.
  const std::size_t size = space.size();
  std::vector<PointId> orbit(size * n);
  for (PointId x = 0; x < size; ++x) {
    PointId p = x;
    for (std::size_t k = 0; k < n; ++k) {
      orbit[x * n + k] = p;
      p = map(p);
    }
  }
  auto close = [&](PointId u, PointId v) {
    for (std::size_t k = 0; k < n; ++k)
      if (space.dist(orbit[u * n + k], orbit[v * n + k]) > eps) return false;
    return true;
  };
  SeparatedResult out;
  if (mode == SolveMode::greedy) {
    const auto sol = greedy_independent_set(size, close);
    out.count = sol.members.size();
    out.witness = sol.members;
    out.exact = false;
    return out;
  }
  std::vector<Bits> adj(size, Bits(size));
  for (PointId u = 0; u < size; ++u)
    for (PointId v = u + 1; v < size; ++v)
      if (close(u, v)) {
        adj[u].set(v);
        adj[v].set(u);
      }
  const auto sol = exact_independent_set(adj, node_budget);
  out.count = sol.members.size();
  out.witness = sol.members;
  out.exact = true;
  return out;
}

double lipschitz_constant(const FiniteMetricSpace& space, const DynMap& map) {
  require_valid_map(space, map);
  if (space.size() < 2) throw UsageError("lipschitz_constant needs at least two points");
  double best = 0.0;
  for (PointId x = 0; x < space.size(); ++x) {
    const PointId fx = map(x);
    for (PointId y = x + 1; y < space.size(); ++y) {
      const double num = space.dist(fx, map(y));
      if (num == 0.0) continue;
      best = std::max(best, num / space.dist(x, y));
    }
  }
  return best;
}

IterateRate iterate_rate(const FiniteMetricSpace& space, const DynMap& map, std::size_t horizon) {
  if (horizon == 0) throw UsageError("iterate_rate needs a horizon of at least 1");
  IterateRate out;
  DynMap power = map;
  std::vector<double> logs;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (n > 1)
      for (auto& y : power.image) y = map.image[y];
    const double L = lipschitz_constant(space, power);
    out.lipschitz.push_back(L);
    logs.push_back(std::log(L));
    out.per_n.push_back(logs.back() / static_cast<double>(n));
  }
  out.l = *std::min_element(out.per_n.begin(), out.per_n.end());
  for (std::size_t m = 1; m <= horizon; ++m)
    for (std::size_t n = 1; m + n <= horizon; ++n) {
      const double lhs = logs[m + n - 1];
      const double rhs = logs[m - 1] + logs[n - 1];
      if (std::isinf(rhs) && rhs < 0) {
        if (!(std::isinf(lhs) && lhs < 0)) out.subadditive = false;
      } else if (lhs > rhs + 1e-9) {
        out.subadditive = false;
      }
    }
  return out;
}

BlockLength bowen_block_length(const FiniteMetricSpace& space, const DynMap& map, const Cover& cover,
                               const PointSet& block, std::size_t cap) {
  if (cap == 0) throw UsageError("bowen_block_length needs cap >= 1");
  require_valid_map(space, map);
  require_valid_cover(space, cover);
  Bits b = block.to_bits(space.size());
  for (std::size_t k = 0; k < cap; ++k) {
    const bool fits = std::any_of(cover.members().begin(), cover.members().end(),
                                  [&](const Bits& m) { return b.is_subset_of(m); });
    if (!fits) return {k, false};
    Bits next(space.size());
    for (auto p = b.find_first(); p != Bits::npos; p = b.find_next(p)) next.set(map(static_cast<PointId>(p)));
    b = std::move(next);
  }
  return {cap, true};
}

namespace {

double min_cross_distance(const FiniteMetricSpace& space, const Bits& a, const Bits& b) {
  std::vector<PointId> bs;
  for (auto q = b.find_first(); q != Bits::npos; q = b.find_next(q)) bs.push_back(static_cast<PointId>(q));
  double best = std::numeric_limits<double>::infinity();
  for (auto p = a.find_first(); p != Bits::npos; p = a.find_next(p))
    for (PointId q : bs) best = std::min(best, space.dist(static_cast<PointId>(p), q));
  return best;
}

}  // namespace

ExtReal preimage_gap(const FiniteMetricSpace& space, const DynMap& map, std::size_t n, PointId x, PointId y) {
  require_valid_map(space, map);
  space.check_point(x);
  space.check_point(y);
  const Preimages pre(map);
  Bits a(space.size()), b(space.size());
  a.set(x);
  b.set(y);
  for (std::size_t k = 0; k < n; ++k) {
    a = pre.pull(a);
    b = pre.pull(b);
  }
  if (a.none() || b.none()) return ExtReal::infinity();
  return ExtReal(min_cross_distance(space, a, b));
}

PointSet eventual_image(const FiniteMetricSpace& space, const DynMap& map) {
  require_valid_map(space, map);
  Bits s(space.size());
  s.set();
  while (true) {
    Bits next(space.size());
    for (auto p = s.find_first(); p != Bits::npos; p = s.find_next(p)) next.set(map(static_cast<PointId>(p)));
    if (next == s) break;
    s = std::move(next);
  }
  return PointSet::from_bits(s);
}

PreimageBound lbd_lower_bound(const FiniteMetricSpace& space, const DynMap& map, std::size_t horizon,
                              std::size_t pair_budget) {
  if (horizon == 0) throw UsageError("lbd_lower_bound needs a horizon of at least 1");
  const PointSet core = eventual_image(space, map);
  if (core.size() < 2) throw UsageError("eventual image is a single point; the preimage-gap bound does not apply");
  const Preimages pre(map);
  const std::size_t first = horizon / 2 + 1;

  // preimage[i][n - first]: f^{-n} of the i-th core point, for n in the window.
  std::vector<std::vector<Bits>> preimage(core.size());
  for (std::size_t i = 0; i < core.size(); ++i) {
    Bits s(space.size());
    s.set(core.ids()[i]);
    for (std::size_t n = 1; n <= horizon; ++n) {
      s = pre.pull(s);
      if (n >= first) preimage[i].push_back(s);
    }
  }

  PreimageBound out;
  out.window_first = first;
  out.window_last = horizon;
  bool have = false;
  for (std::size_t i = 0; i < core.size() && out.pairs < pair_budget; ++i) {
    for (std::size_t j = i + 1; j < core.size() && out.pairs < pair_budget; ++j) {
      ++out.pairs;
      const PointId x = core.ids()[i], y = core.ids()[j];
      const double d = space.dist(x, y);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t n = first; n <= horizon; ++n) {
        const double gap = min_cross_distance(space, preimage[i][n - first], preimage[j][n - first]);
        const double c = std::log(d / gap) / static_cast<double>(n);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (!have || lo > out.lower) {
        out.lower = lo;
        out.x = x;
        out.y = y;
      }
      if (!have || hi > out.upper) out.upper = hi;
      have = true;
    }
  }
  return out;
}

}  // namespace lebdyn
