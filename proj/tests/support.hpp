#pragma once

// Brute-force oracles over plain vectors and seeded random instances.
// The oracles only use the distance matrix, never the library's cover or solver code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "lebdyn/cover.hpp"
#include "lebdyn/dynamics.hpp"
#include "lebdyn/metric_space.hpp"

namespace oracle {

using Set = std::vector<int>;  // sorted ids
using Family = std::vector<Set>;
using Matrix = std::vector<std::vector<double>>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Matrix matrix_of(const lebdyn::FiniteMetricSpace& s) {
  const auto n = s.size();
  Matrix d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = s.dist(static_cast<lebdyn::PointId>(i), static_cast<lebdyn::PointId>(j));
  return d;
}

inline bool has(const Set& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

// min over y outside s of d(x, y); infinity when s is everything.
inline double gap(const Matrix& d, const Set& s, int x) {
  double g = kInf;
  for (int y = 0; y < static_cast<int>(d.size()); ++y)
    if (!has(s, y)) g = std::min(g, d[x][y]);
  return g;
}

inline double delta_at(const Matrix& d, const Family& u, int x) {
  double best = -kInf;
  for (const auto& m : u)
    if (has(m, x)) best = std::max(best, gap(d, m, x));
  return best;
}

// Lebesgue number; infinity when some member is the whole space.
inline double delta(const Matrix& d, const Family& u) {
  double v = kInf;
  for (int x = 0; x < static_cast<int>(d.size()); ++x) v = std::min(v, delta_at(d, u, x));
  return v;
}

inline Family canon(Family f) {
  for (auto& s : f) std::sort(s.begin(), s.end());
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

inline Family join(const Family& a, const Family& b) {
  Family out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Set z;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
      if (!z.empty()) out.push_back(z);
    }
  return out;
}

inline Family pullback(const std::vector<int>& f, const Family& u) {
  Family out;
  for (const auto& m : u) {
    Set p;
    for (int x = 0; x < static_cast<int>(f.size()); ++x)
      if (has(m, f[x])) p.push_back(x);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

inline std::vector<int> compose(const std::vector<int>& f, std::size_t k) {
  std::vector<int> g(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    int y = static_cast<int>(x);
    for (std::size_t i = 0; i < k; ++i) y = f[y];
    g[x] = y;
  }
  return g;
}

// U v f^-1 U v ... v f^-(n-1) U
inline Family iterated(const std::vector<int>& f, const Family& u, std::size_t n) {
  Family out = u;
  for (std::size_t k = 1; k < n; ++k) out = canon(join(out, pullback(compose(f, k), u)));
  return out;
}

inline bool covers_all(const Family& u, const std::vector<std::size_t>& pick, std::size_t n) {
  std::vector<char> hit(n, 0);
  for (auto i : pick)
    for (int x : u[i]) hit[x] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// All minimum-cardinality subfamilies (as index lists), by increasing size.
inline std::vector<std::vector<std::size_t>> minimum_subcovers(const Family& u, std::size_t n) {
  const std::size_t m = u.size();
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::vector<std::size_t>> found;
    std::vector<char> mask(m, 0);
    std::fill(mask.begin(), mask.begin() + k, 1);
    do {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < m; ++i)
        if (mask[i]) pick.push_back(i);
      if (covers_all(u, pick, n)) found.push_back(pick);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    if (!found.empty()) return found;
  }
  return {};
}

// Fewest open gamma-balls centred at points.
inline std::size_t covering_number(const Matrix& d, double gamma) {
  const std::size_t n = d.size();
  Family balls(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t y = 0; y < n; ++y)
      if (d[c][y] < gamma) balls[c].push_back(static_cast<int>(y));
  const auto best = minimum_subcovers(balls, n);
  return best.front().size();
}

inline double bowen(const Matrix& d, const std::vector<int>& f, std::size_t n, int x, int y) {
  double b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    b = std::max(b, d[x][y]);
    x = f[x];
    y = f[y];
  }
  return b;
}

// Largest set with pairwise Bowen distance > eps, by subset enumeration (n <= 20).
inline std::size_t max_separated(const Matrix& d, const std::vector<int>& f, std::size_t n, double eps) {
  const int p = static_cast<int>(d.size());
  std::vector<std::uint32_t> conflict(p, 0);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      if (x != y && bowen(d, f, n, x, y) <= eps) conflict[x] |= 1u << y;
  std::size_t best = 0;
  for (std::uint32_t s = 1; s < (1u << p); ++s) {
    bool ok = true;
    for (int x = 0; x < p && ok; ++x)
      if ((s >> x & 1u) && (conflict[x] & s)) ok = false;
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
  }
  return best;
}

inline double lipschitz(const Matrix& d, const std::vector<int>& f) {
  double l = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t y = x + 1; y < d.size(); ++y) l = std::max(l, d[f[x]][f[y]] / d[x][y]);
  return l;
}

inline double diam(const Matrix& d, const Family& u) {
  double m = 0.0;
  for (const auto& s : u)
    for (int x : s)
      for (int y : s) m = std::max(m, d[x][y]);
  return m;
}

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

// Random points on the line, rounded to a 1/1024 grid and made distinct.
inline lebdyn::FiniteMetricSpace line(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> pos(0, 1023);
  std::set<int> seen;
  while (seen.size() < n) seen.insert(pos(rng));
  std::vector<double> xs;
  for (int p : seen) xs.push_back(p / 1024.0);
  std::shuffle(xs.begin(), xs.end(), rng);
  return lebdyn::line_space(xs);
}

// Shortest-path metric of a random weighted complete graph.
inline lebdyn::FiniteMetricSpace graph(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> w(1, 16);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = w(rng) / 16.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::min(m[i * n + j], m[i * n + k] + m[k * n + j]);
  return lebdyn::matrix_space(n, m);
}

inline lebdyn::FiniteMetricSpace space(Rng& rng, std::size_t n) {
  return std::bernoulli_distribution(0.5)(rng) ? line(rng, n) : graph(rng, n);
}

inline std::vector<int> map(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::vector<int> f(n);
  for (auto& y : f) y = pick(rng);
  if (std::bernoulli_distribution(0.3)(rng)) {
    for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<int>(i);
    std::shuffle(f.begin(), f.end(), rng);
  }
  return f;
}

// Up to `max_members` random members, then every uncovered point joins a random member.
inline oracle::Family cover(Rng& rng, std::size_t n, std::size_t max_members) {
  std::uniform_int_distribution<std::size_t> count(1, max_members);
  const std::size_t m = count(rng);
  std::uniform_int_distribution<std::size_t> member(0, m - 1);
  std::bernoulli_distribution in(std::uniform_real_distribution<double>(0.1, 0.6)(rng));
  oracle::Family u(m);
  std::vector<char> hit(n, 0);
  for (auto& s : u)
    for (std::size_t x = 0; x < n; ++x)
      if (in(rng)) {
        s.push_back(static_cast<int>(x));
        hit[x] = 1;
      }
  for (std::size_t x = 0; x < n; ++x)
    if (!hit[x]) u[member(rng)].push_back(static_cast<int>(x));
  for (auto& s : u) std::sort(s.begin(), s.end());
  u.erase(std::remove_if(u.begin(), u.end(), [](const oracle::Set& s) { return s.empty(); }), u.end());
  return u;
}

}  // namespace gen

namespace conv {

inline lebdyn::Cover cover(std::size_t n, const oracle::Family& u) {
  std::vector<lebdyn::PointSet> sets;
  for (const auto& s : u) sets.emplace_back(std::vector<lebdyn::PointId>(s.begin(), s.end()));
  return lebdyn::Cover::from_sets(n, sets);
}

inline oracle::Family family(const lebdyn::Cover& c) {
  oracle::Family u;
  for (const auto& s : c.member_sets()) u.emplace_back(s.begin(), s.end());
  return u;
}

inline lebdyn::DynMap map(const std::vector<int>& f) {
  lebdyn::DynMap m;
  m.image.assign(f.begin(), f.end());
  return m;
}

inline std::vector<int> image(const lebdyn::DynMap& m) { return {m.image.begin(), m.image.end()}; }

// Library Lebesgue number with the capped case mapped to infinity.
inline double delta(const lebdyn::FiniteMetricSpace& s, const lebdyn::Cover& c) {
  const auto r = lebdyn::lebesgue_number(s, c);
  return r.capped ? oracle::kInf : r.delta;
}

}  // namespace conv

inline bool rel_equal(double a, double b, double tol = 1e-12) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
