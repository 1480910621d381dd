#include "lebdyn/systems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "lebdyn/errors.hpp"

namespace lebdyn {

using nlohmann::json;

namespace {

const double kLn2 = std::numbers::ln2;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double get(const json& params, const std::string& name) { return params.at(name).get<double>(); }

std::int64_t get_int(const json& params, const std::string& name) {
  const double v = get(params, name);
  return static_cast<std::int64_t>(v);
}

void require_int(const json& params, const std::string& family, const std::string& name, double lo, double hi) {
  const double v = get(params, name);
  if (v != std::floor(v) || v < lo || v > hi)
    throw UsageError(family + ": parameter " + name + " must be an integer in [" + num(lo) + ", " + num(hi) +
                     "], got " + num(v));
}

void require_range(const json& params, const std::string& family, const std::string& name, double lo, double hi) {
  const double v = get(params, name);
  if (!(v >= lo && v <= hi))
    throw UsageError(family + ": parameter " + name + " must lie in [" + num(lo) + ", " + num(hi) + "], got " +
                     num(v));
}

Cited cite(double v, std::string c) { return Cited{v, std::move(c)}; }

const std::string kClassical = "analytic (classical fact)";

struct Built {
  FiniteMetricSpace space;
  DynMap map;
  KnownInvariants known;
};

// Points of a line given as anchor + offset, sorted and deduplicated.
struct LinePoint {
  double anchor = 0.0;
  double offset = 0.0;
  int kind = 0;  // family-specific tag
  [[nodiscard]] double value() const { return anchor + offset; }
};

bool line_less(const LinePoint& a, const LinePoint& b) {
  if (a.anchor == b.anchor) return a.offset < b.offset;
  return a.value() < b.value();
}

// Across anchors, values that agree up to rounding are the same set element.
bool line_equal(const LinePoint& a, const LinePoint& b) {
  if (a.anchor == b.anchor) return a.offset == b.offset;
  const double gap = std::abs((a.anchor - b.anchor) + (a.offset - b.offset));
  return gap <= 1e-12 * std::max(std::abs(a.value()), std::abs(b.value()));
}

double line_gap(const LinePoint& a, const LinePoint& b) {
  if (a.anchor == b.anchor) return std::abs(a.offset - b.offset);
  return std::abs((a.anchor - b.anchor) + (a.offset - b.offset));
}

void sort_unique(std::vector<LinePoint>& pts) {
  std::stable_sort(pts.begin(), pts.end(), line_less);
  std::vector<LinePoint> out;
  for (const auto& p : pts) {
    if (!out.empty() && line_equal(out.back(), p)) {
      // A marked point (fixed, chain top) wins over an unmarked duplicate.
      out.back().kind = std::max(out.back().kind, p.kind);
      continue;
    }
    out.push_back(p);
  }
  pts = std::move(out);
}

double min_gap(const std::vector<LinePoint>& sorted) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) m = std::min(m, line_gap(sorted[i - 1], sorted[i]));
  return m;
}

FiniteMetricSpace to_space(const std::vector<LinePoint>& pts) {
  std::vector<double> anchor, offset;
  std::vector<std::string> labels;
  for (const auto& p : pts) {
    anchor.push_back(p.anchor);
    offset.push_back(p.offset);
    labels.push_back(p.offset == 0.0 ? num(p.anchor) : num(p.anchor) + (p.offset < 0 ? "" : "+") + num(p.offset));
  }
  return FiniteMetricSpace(AnchoredLineMetric{std::move(anchor), std::move(offset)}, std::move(labels));
}

// Largest value of an integer parameter, at most `requested`, whose points pass the underflow guard.
template <class Points>
std::int64_t safe_maximum(std::int64_t requested, std::int64_t lowest, Points points) {
  for (std::int64_t v = requested; v >= lowest; --v) {
    auto pts = points(v);
    if (min_gap(pts) >= kUnderflowGuard) return v;
  }
  return lowest - 1;
}

template <class Points>
std::vector<LinePoint> guarded_points(const std::string& family, const std::string& param, std::int64_t value,
                                      std::int64_t lowest, Points points) {
  auto pts = points(value);
  if (min_gap(pts) < kUnderflowGuard) {
    const auto safe = safe_maximum(value - 1, lowest, points);
    throw NumericError(family + ": " + param + "=" + std::to_string(value) +
                       " synthesizes distances below 1e-300; safe maximum " + param + "=" + std::to_string(safe));
  }
  return pts;
}

// Successor map on sorted points; points with kind >= 1 and the largest point stay fixed.
DynMap successor_map(const std::vector<LinePoint>& pts) {
  DynMap m = DynMap::identity(pts.size());
  for (PointId i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].kind == 0) m.image[i] = i + 1;
  return m;
}

Built build_doubling(const json& p) {
  const auto m = get_int(p, "m");
  const std::int64_t n = std::int64_t{1} << m;
  DynMap f;
  f.image.resize(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) f.image[j] = static_cast<PointId>((2 * j) % n);
  Built b{circle_grid(n, 1.0), std::move(f), {}};
  const std::string c = "standard: doubling map";
  b.known.h = cite(kLn2, c);
  b.known.h_L_lower = cite(kLn2, c);
  b.known.h_L_upper = cite(kLn2, c);
  b.known.l = cite(kLn2, c);
  b.known.L = cite(2.0, c);
  b.known.dimb = cite(1.0, kClassical);
  b.known.dimh = cite(1.0, kClassical);
  return b;
}

Built build_rotation(const json& p) {
  const auto q = get_int(p, "q");
  const auto step = get_int(p, "step");
  DynMap f;
  f.image.resize(static_cast<std::size_t>(q));
  for (std::int64_t j = 0; j < q; ++j) f.image[j] = static_cast<PointId>(((j + step) % q + q) % q);
  Built b{circle_grid(q, 1.0), std::move(f), {}};
  const std::string c = "standard: isometries have vanishing Lebesgue rates";
  b.known.h = cite(0.0, c);
  b.known.h_L_lower = cite(0.0, c);
  b.known.h_L_upper = cite(0.0, c);
  b.known.l = cite(0.0, c);
  b.known.L = cite(1.0, c);
  b.known.dimb = cite(1.0, kClassical);
  b.known.dimh = cite(1.0, kClassical);
  return b;
}

void countable_known(KnownInvariants& k) {
  k.h = cite(0.0, kClassical);
  k.dimh = cite(0.0, kClassical);
}

std::vector<LinePoint> sqrt_points(std::int64_t K) {
  std::vector<LinePoint> pts{{0.0, 0.0, 1}};
  for (std::int64_t k = K; k >= 0; --k) pts.push_back({std::ldexp(1.0, -static_cast<int>(std::int64_t{1} << k)), 0.0, 0});
  pts.push_back({1.0, 0.0, 1});
  return pts;
}

Built build_sqrt(const json& p) {
  const auto K = get_int(p, "K");
  if (K > 9) {
    throw NumericError("sqrt: K=" + std::to_string(K) +
                       " synthesizes distances below 1e-300; safe maximum K=9");
  }
  auto pts = sqrt_points(K);
  // ids: 0 -> 0, 2^-2^k -> K + 1 - k, 1 -> K + 2
  DynMap f = DynMap::identity(pts.size());
  for (std::int64_t k = 1; k <= K; ++k) f.image[K + 1 - k] = static_cast<PointId>(K + 2 - k);
  f.image[K + 1] = static_cast<PointId>(K + 2);  // 1/2 -> 1
  Built b{to_space(pts), std::move(f), {}};
  const double inf = std::numeric_limits<double>::infinity();
  const std::string c = "example: f(x)=sqrt(x) on {0} U {2^-2^k} U {1}, h_L^* infinite";
  b.known.h_L_lower = cite(inf, c);
  b.known.h_L_upper = cite(inf, c);
  b.known.L = cite(inf, kClassical);
  b.known.l = cite(inf, kClassical);
  countable_known(b.known);
  return b;
}

Built build_involution(const json& p) {
  const auto pairs = get_int(p, "pairs");
  std::vector<double> xs;
  DynMap f;
  for (std::int64_t i = 0; i < pairs; ++i) {
    const double theta = std::numbers::pi / 4.0 * static_cast<double>(i) / static_cast<double>(pairs);
    xs.push_back(std::sin(theta));
    xs.push_back(std::cos(theta));
    f.image.push_back(static_cast<PointId>(2 * i + 1));
    f.image.push_back(static_cast<PointId>(2 * i));
  }
  xs.push_back(std::sqrt(0.5));
  f.image.push_back(static_cast<PointId>(2 * pairs));
  std::vector<std::string> labels;
  for (double x : xs) labels.push_back(num(x));
  EuclideanMetric m;
  m.dim = 1;
  m.coords = std::move(xs);
  Built b{FiniteMetricSpace(std::move(m), std::move(labels)), std::move(f), {}};
  const std::string c = "example: f(x)=sqrt(1-x^2) satisfies f(f(x))=x";
  b.known.h_L_lower = cite(0.0, c);
  b.known.h_L_upper = cite(0.0, c);
  countable_known(b.known);
  return b;
}

bool power_of_two(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

std::vector<LinePoint> ladder_points(std::int64_t M) {
  std::vector<LinePoint> pts{{0.0, 0.0, 1}};
  for (std::int64_t m = 1; m <= M; ++m)
    pts.push_back({std::ldexp(1.0, -static_cast<int>(m)), 0.0, power_of_two(m) ? 1 : 0});
  return pts;
}

Built build_ladder(const json& p) {
  const auto M = get_int(p, "M");
  auto pts = guarded_points("ladder_ex3", "M", M, 2, ladder_points);
  // id m holds 2^-m; doubling moves m to m - 1 except at fixed points.
  DynMap f = DynMap::identity(pts.size());
  for (std::int64_t m = 2; m <= M; ++m)
    if (!power_of_two(m)) f.image[m] = static_cast<PointId>(m - 1);
  Built b{to_space(pts), std::move(f), {}};
  const std::string c = "example: ladder {0} U {2^-m}, doubling off the points 2^-2^k";
  b.known.l = cite(kLn2, c);
  b.known.h_L_lower = cite(0.0, c);
  b.known.h_L_upper = cite(0.0, c);
  b.known.L = cite(2.0, c);
  countable_known(b.known);
  return b;
}

// Marks: 1 = fixed point (0 or a^-2^p), 2 = top of a left cluster (kept fixed in the truncation).
std::vector<LinePoint> xab_points(double a, double b, std::int64_t P, std::int64_t Q, std::int64_t Qa) {
  std::vector<LinePoint> pts{{0.0, 0.0, 1}};
  const std::int64_t chain = std::int64_t{1} << P;
  for (std::int64_t m = 1; m <= chain; ++m) pts.push_back({std::pow(a, -static_cast<double>(m)), 0.0, 0});
  for (std::int64_t p = 0; p <= P; ++p) {
    const double A = std::pow(a, -std::ldexp(1.0, static_cast<int>(p)));
    pts.push_back({A, 0.0, 1});
    for (std::int64_t q = 1; q <= Q; ++q) pts.push_back({A, -a * A / (a + static_cast<double>(q)), q == Q ? 2 : 0});
    for (std::int64_t q = -Qa; std::pow(b, static_cast<double>(q)) < a - 1.0 && q <= 4096; ++q)
      pts.push_back({A, A * std::pow(b, static_cast<double>(q)), 0});
  }
  sort_unique(pts);
  return pts;
}

Built build_xab(const json& p) {
  const double a = get(p, "a"), b = get(p, "b");
  if (!(a >= b && b > 1.0)) throw UsageError("xab: parameters must satisfy a >= b > 1");
  const auto Q = get_int(p, "Q"), Qa = get_int(p, "Q_above");
  auto pts = guarded_points("xab", "P", get_int(p, "P"), 0,
                            [&](std::int64_t P) { return xab_points(a, b, P, Q, Qa); });
  if (pts.size() > 2000) throw UsageError("xab: " + std::to_string(pts.size()) + " points exceed the 2000 point limit");
  DynMap f = successor_map(pts);
  Built out{to_space(pts), std::move(f), {}};
  const std::string c = "example: X_{a,b} with the successor map";
  out.known.l = cite(std::log(a), c);
  out.known.h_L_lower = cite(std::log(b), c);
  out.known.h_L_upper = cite(std::log(b), c);
  countable_known(out.known);
  return out;
}

std::vector<LinePoint> xa_points(double a, std::int64_t P, std::int64_t Q) {
  std::vector<LinePoint> pts{{0.0, 0.0, 1}};
  const std::int64_t chain = std::int64_t{1} << P;
  for (std::int64_t m = 1; m <= chain; ++m) pts.push_back({std::pow(a, -static_cast<double>(m)), 0.0, 0});
  for (std::int64_t p = 0; p <= P; ++p) {
    const double A = std::pow(a, -std::ldexp(1.0, static_cast<int>(p)));
    pts.push_back({A, 0.0, 1});
    for (std::int64_t q = 1; q <= Q; ++q) {
      const double dq = static_cast<double>(q);
      pts.push_back({A, -a * A / (a + dq), q == Q ? 2 : 0});
      if (A * (a + dq) / dq <= 1.0) pts.push_back({A, a * A / dq, 0});
    }
  }
  sort_unique(pts);
  return pts;
}

Built build_xa(const json& p) {
  const double a = get(p, "a");
  if (!(a > 1.0)) throw UsageError("xa: parameter a must exceed 1");
  const auto Q = get_int(p, "Q");
  auto pts = guarded_points("xa", "P", get_int(p, "P"), 0, [&](std::int64_t P) { return xa_points(a, P, Q); });
  if (pts.size() > 2000) throw UsageError("xa: " + std::to_string(pts.size()) + " points exceed the 2000 point limit");
  DynMap f = successor_map(pts);
  Built out{to_space(pts), std::move(f), {}};
  const std::string c = "example: X_a with the successor map";
  out.known.l = cite(std::log(a), c);
  out.known.h_L_lower = cite(0.0, c);
  out.known.h_L_upper = cite(0.0, c);
  countable_known(out.known);
  return out;
}

}  // namespace

std::vector<double> oscillating_exponents(double a, double b, std::size_t count) {
  std::vector<double> s(count + 1, 0.0);  // s[n], n >= 1
  if (count >= 2) s[2] = a;
  for (std::size_t n = 3; n <= count; ++n) {
    // Find the block: exponents e with 2^(2^e) <= n < 2^(2^(e+1)); e even -> a, e odd -> b.
    std::size_t e = 0;
    while (e < 6 && std::ldexp(1.0, 1 << (e + 1)) <= static_cast<double>(n)) ++e;
    s[n] = s[n - 1] + (e % 2 == 0 ? a : b);
  }
  return s;
}

namespace {

std::vector<LinePoint> osc_points(double a, double b, std::int64_t N) {
  const auto s = oscillating_exponents(a, b, static_cast<std::size_t>(N));
  std::vector<LinePoint> pts{{0.0, 0.0, 1}};
  for (std::int64_t n = N; n >= 1; --n) pts.push_back({std::exp(-s[n]), 0.0, 0});
  return pts;
}

Built build_osc(const json& p) {
  const double a = get(p, "a"), b = get(p, "b");
  if (!(a > b && b > 0.0)) throw UsageError("osc: parameters must satisfy a > b > 0");
  const auto N = get_int(p, "N_max");
  auto pts = guarded_points("osc", "N_max", N, 2, [&](std::int64_t n) { return osc_points(a, b, n); });
  // ids: 0 -> 0, t_n -> N + 1 - n. f(t_n) = t_{n-1}; t_1 = 1 and 0 are fixed.
  DynMap f = DynMap::identity(pts.size());
  for (std::int64_t n = 2; n <= N; ++n) f.image[N + 1 - n] = static_cast<PointId>(N + 2 - n);
  std::vector<double> xs;
  std::vector<std::string> labels;
  for (const auto& pt : pts) {
    xs.push_back(pt.anchor);
    labels.push_back(num(pt.anchor));
  }
  EuclideanMetric m;
  m.dim = 1;
  m.coords = std::move(xs);
  Built out{FiniteMetricSpace(std::move(m), std::move(labels)), std::move(f), {}};
  const std::string c = "example: oscillating sequence t_n = exp(-s_n)";
  out.known.h_L_upper = cite(a, c);
  out.known.h_L_lower = cite(b, c);
  out.known.l = cite(a, c);
  countable_known(out.known);
  return out;
}

FiniteMetricSpace interval_grid(std::int64_t q) {
  std::vector<double> ys;
  for (std::int64_t j = 0; j < q; ++j) ys.push_back(static_cast<double>(j) / static_cast<double>(q - 1));
  return line_space(std::move(ys));
}

Built build_cylinder(const json& p) {
  const auto m = get_int(p, "m");
  const auto q = get_int(p, "q");
  const std::int64_t n = std::int64_t{1} << m;
  const FiniteMetricSpace circle = circle_grid(n, 1.0);
  const FiniteMetricSpace column = interval_grid(q);
  DynMap f;
  f.image.resize(static_cast<std::size_t>(n * q));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t fi = 2 * i < n ? 2 * i : 0;
    for (std::int64_t j = 0; j < q; ++j) f.image[i * q + j] = static_cast<PointId>(fi * q + j);
  }
  Built out{max_product(circle, column), std::move(f), {}};
  const std::string c = "example: cylinder map (2x, y) collapsing x >= 1/2 to the column x = 0";
  out.known.h = cite(0.0, kClassical);
  out.known.h_L_lower = cite(kLn2, c);
  out.known.h_L_upper = cite(kLn2, c);
  out.known.L = cite(2.0, c);
  out.known.l = cite(kLn2, c);
  out.known.dimb = cite(2.0, kClassical);
  out.known.dimh = cite(2.0, kClassical);
  return out;
}

Built build_shift(const json& p) {
  const auto k = get_int(p, "k");
  const auto L = get_int(p, "L");
  double total = 1.0;
  for (std::int64_t i = 0; i < L; ++i) total *= static_cast<double>(k);
  if (total > 1 << 20) throw UsageError("shift: k^L exceeds 2^20 words");
  const auto n = static_cast<std::uint64_t>(total);
  const std::uint64_t tail = n / static_cast<std::uint64_t>(k);
  DynMap f;
  f.image.resize(n);
  for (std::uint64_t w = 0; w < n; ++w) f.image[w] = static_cast<PointId>((w % tail) * static_cast<std::uint64_t>(k));
  WordMetric wm{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(L)};
  Built out{FiniteMetricSpace(wm), std::move(f), {}};
  const std::string c = "standard: one-sided shift with d = 2^-(first difference)";
  const double lk = std::log(static_cast<double>(k));
  out.known.h = cite(lk, c);
  out.known.h_L_lower = cite(kLn2, c);
  out.known.h_L_upper = cite(kLn2, c);
  out.known.L = cite(2.0, c);
  out.known.l = cite(kLn2, c);
  out.known.dimb = cite(lk / kLn2, kClassical);
  out.known.dimh = cite(lk / kLn2, kClassical);
  return out;
}

struct Family {
  FamilyInfo info;
  std::vector<double> radii;
  std::size_t horizon;
  std::vector<double> eps;
  std::function<void(const json&)> check;
  std::function<Built(const json&)> build;
};

const std::vector<Family>& families();

}  // namespace

SystemBundle generate_system(const SystemSpec& raw);

namespace {

Built build_product(const json& p) {
  const SystemSpec left_spec = spec_from_json(p.at("left"));
  const SystemBundle left = generate_system(left_spec);
  const auto q = get_int(p, "interval_points");
  const FiniteMetricSpace column = interval_grid(q);
  DynMap f;
  const auto nl = left.space.size();
  f.image.resize(nl * static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < nl; ++i)
    for (std::int64_t j = 0; j < q; ++j) f.image[i * q + j] = static_cast<PointId>(left.map.image[i] * q + j);
  Built out{max_product(left.space, column), std::move(f), {}};
  const std::string c = "example: product (f, id) with an interval";
  const auto& k = left.known;
  if (k.dimh) out.known.dimh = cite(k.dimh->value + 1.0, kClassical);
  if (k.dimb) out.known.dimb = cite(k.dimb->value + 1.0, kClassical);
  if (k.h) out.known.h = cite(k.h->value, c);
  if (k.l) out.known.l = cite(std::max(k.l->value, 0.0), c);
  if (k.L) out.known.L = cite(std::max(k.L->value, 1.0), c);
  if (k.h_L_lower) out.known.h_L_lower = cite(k.h_L_lower->value, c);
  if (k.h_L_upper) out.known.h_L_upper = cite(k.h_L_upper->value, c);
  return out;
}

json defaults(std::initializer_list<std::pair<const char*, double>> kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

const std::vector<Family>& families() {
  static const std::vector<Family> list = [] {
    std::vector<Family> f;
    f.push_back({{"doubling", "standard",
                  "x -> 2x mod 1 on the circle grid of 2^m points",
                  {{"m", 10, "log2 of the number of grid points (2..16)"}}},
                 {1.0 / 16, 1.0 / 32, 1.0 / 64}, 8, {1.0 / 8, 1.0 / 16},
                 [](const json& p) { require_int(p, "doubling", "m", 2, 16); },
                 build_doubling});
    f.push_back({{"rotation", "standard (isometry)",
                  "rotation by `step` grid steps on the circle grid of q points",
                  {{"q", 97, "number of grid points"}, {"step", 13, "rotation in grid steps"}}},
                 {0.1, 0.05}, 8, {0.1, 0.05},
                 [](const json& p) {
                   require_int(p, "rotation", "q", 2, 1 << 20);
                   require_int(p, "rotation", "step", -(1 << 20), 1 << 20);
                 },
                 build_rotation});
    f.push_back({{"sqrt", "example: f(x) = sqrt(x) on [0, 1]",
                  "{0, 1} U {2^-2^k : 0 <= k <= K}; 2^-2^k -> 2^-2^(k-1), 1/2 -> 1, 0 and 1 fixed",
                  {{"K", 6, "depth of the preimage chain of 1/2 (1..9)"}}},
                 {0.04, 0.02}, 7, {0.1, 0.05},
                 [](const json& p) { require_int(p, "sqrt", "K", 1, 1 << 20); },
                 build_sqrt});
    f.push_back({{"involution", "example: f(x) = sqrt(1 - x^2), an involution",
                  "pairs (sin t, cos t) for t on a grid of [0, pi/4) swapped by f, plus the fixed point 1/sqrt(2)",
                  {{"pairs", 20, "number of swapped pairs"}}},
                 {0.1, 0.05}, 8, {0.1, 0.05},
                 [](const json& p) { require_int(p, "involution", "pairs", 1, 1 << 16); },
                 build_involution});
    f.push_back({{"ladder_ex3", "example: ladder of dyadic points with fixed rungs",
                  "{0} U {2^-m : m <= M}; x -> 2x except fixed at 0 and at 2^-2^k",
                  {{"M", 64, "truncation depth"}}},
                 {1.0 / 8, 1.0 / 16}, 8, {1.0 / 8, 1.0 / 16},
                 [](const json& p) { require_int(p, "ladder_ex3", "M", 2, 1 << 16); },
                 build_ladder});
    f.push_back({{"xab", "example: X_{a,b} with the successor map",
                  "{0} U {a^-m} U {q a^-2^p / (a + q)} U {a^-2^p (1 + b^q) : 1 + b^q < a}, p <= P; "
                  "successor map, fixed at 0 and a^-2^p",
                  {{"a", 4, "outer ratio (a >= b > 1)"},
                   {"b", 2, "inner ratio"},
                   {"P", 6, "largest p"},
                   {"Q", 100, "points q = 1..Q left of each a^-2^p"},
                   {"Q_above", 100, "points with q >= -Q_above right of each a^-2^p"}}},
                 {0.02, 0.01}, 8, {0.02, 0.01},
                 [](const json& p) {
                   require_range(p, "xab", "a", 1.0, 1e6);
                   require_range(p, "xab", "b", 1.0, 1e6);
                   require_int(p, "xab", "P", 0, 12);
                   require_int(p, "xab", "Q", 1, 2000);
                   require_int(p, "xab", "Q_above", 0, 2000);
                 },
                 build_xab});
    f.push_back({{"xa", "example: X_a with the successor map",
                  "{0} U {a^-m} U {a^-2^p (q / (a + q))^(+-1)} within (0, 1]; successor map, fixed at 0 and a^-2^p",
                  {{"a", 4, "ratio (a > 1)"}, {"P", 6, "largest p"}, {"Q", 40, "q = 1..Q on each side"}}},
                 {0.02, 0.01}, 8, {0.02, 0.01},
                 [](const json& p) {
                   require_range(p, "xa", "a", 1.0, 1e6);
                   require_int(p, "xa", "P", 0, 12);
                   require_int(p, "xa", "Q", 1, 2000);
                 },
                 build_xa});
    f.push_back({{"osc", "example: oscillating decay t_n = exp(-s_n)",
                  "{0} U {t_n : n <= N_max}, t_n -> t_(n-1); s_n grows by a or b on alternating doubly "
                  "exponential blocks",
                  {{"a", 1.0, "fast rate (a > b > 0)"}, {"b", 0.5, "slow rate"}, {"N_max", 700, "truncation"}}},
                 {0.1, 0.05}, 700, {0.1, 0.05},
                 [](const json& p) {
                   require_range(p, "osc", "a", 0.0, 1e3);
                   require_range(p, "osc", "b", 0.0, 1e3);
                   require_int(p, "osc", "N_max", 2, 1 << 20);
                 },
                 build_osc});
    f.push_back({{"cylinder", "example: cylinder map with a strict preimage-gap bound",
                  "circle grid 2^m times interval grid q under the max metric; (x, y) -> (2x, y) if 2x < 1, "
                  "else (0, y)",
                  {{"m", 9, "log2 of the circle grid size"}, {"q", 16, "interval grid points"}}},
                 {1.0 / 16, 1.0 / 32}, 8, {1.0 / 16, 1.0 / 32},
                 [](const json& p) {
                   require_int(p, "cylinder", "m", 2, 14);
                   require_int(p, "cylinder", "q", 2, 1 << 10);
                 },
                 build_cylinder});
    f.push_back({{"shift", "standard",
                  "words of length L over k symbols; drop the first symbol, append symbol 0",
                  {{"k", 2, "alphabet size"}, {"L", 10, "word length"}}},
                 {0.2, 0.1}, 6, {0.25, 0.125},
                 [](const json& p) {
                   require_int(p, "shift", "k", 2, 16);
                   require_int(p, "shift", "L", 1, 20);
                 },
                 build_shift});
    f.push_back({{"product", "example: product (f, id) on X_a times [0, 1]",
                  "max-metric product of a nested system (param `left`, a spec object) with an interval grid "
                  "carrying the identity",
                  {{"interval_points", 17, "interval grid points"}}},
                 {0.1, 0.05}, 8, {0.1, 0.05},
                 [](const json& p) { require_int(p, "product", "interval_points", 2, 1 << 10); },
                 build_product});
    return f;
  }();
  return list;
}

json family_defaults(const std::string& name) {
  if (name == "product") {
    json left = {{"family", "xa"}, {"params", {{"Q", 12}}}};
    json j = defaults({{"interval_points", 17}});
    j["left"] = left;
    return j;
  }
  json j = json::object();
  for (const auto& f : families())
    if (f.info.name == name)
      for (const auto& d : f.info.params) j[d.name] = d.default_value;
  return j;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

const Family& find_family(const std::string& name) {
  const auto& fs = families();
  for (const auto& f : fs)
    if (f.info.name == name) return f;
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& f : fs) {
    const auto d = edit_distance(name, f.info.name);
    if (d < best_d) {
      best_d = d;
      best = f.info.name;
    }
  }
  throw UsageError("unknown family '" + name + "'; did you mean '" + best + "'?");
}

void apply_override(std::optional<Cited>& slot, const json& known, const char* key) {
  if (known.contains(key)) slot = Cited{known.at(key).get<double>(), "override"};
}

}  // namespace

const std::vector<FamilyInfo>& list_families() {
  static const std::vector<FamilyInfo> infos = [] {
    std::vector<FamilyInfo> out;
    for (const auto& f : families()) out.push_back(f.info);
    return out;
  }();
  return infos;
}

SystemSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("system spec must be a JSON object");
  static const std::vector<std::string> keys{"family", "params", "mesh_radii", "horizon", "eps", "known", "covers"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw UsageError("unknown spec field '" + k + "'");
  SystemSpec s;
  try {
    s.family = j.at("family").get<std::string>();
    if (j.contains("params")) s.params = j.at("params");
    if (j.contains("mesh_radii")) s.mesh_radii = j.at("mesh_radii").get<std::vector<double>>();
    if (j.contains("horizon")) s.horizon = j.at("horizon").get<std::size_t>();
    if (j.contains("eps")) s.eps = j.at("eps").get<std::vector<double>>();
    if (j.contains("known")) s.known = j.at("known");
    if (j.contains("covers")) s.covers = j.at("covers").get<std::vector<std::vector<std::vector<PointId>>>>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed system spec: ") + e.what());
  }
  if (!s.params.is_object()) throw UsageError("spec params must be an object");
  if (!s.known.is_object()) throw UsageError("spec known must be an object");
  return s;
}

json spec_to_json(const SystemSpec& s) {
  json j;
  j["family"] = s.family;
  j["params"] = s.params;
  j["mesh_radii"] = s.mesh_radii;
  j["horizon"] = s.horizon;
  j["eps"] = s.eps;
  j["known"] = s.known;
  if (!s.covers.empty()) j["covers"] = s.covers;
  return j;
}

SystemSpec resolve_spec(const SystemSpec& spec) {
  const Family& fam = find_family(spec.family);
  SystemSpec r = spec;
  json params = family_defaults(fam.info.name);
  for (const auto& [k, v] : spec.params.items()) {
    if (!params.contains(k)) {
      std::string names;
      for (const auto& [dk, dv] : params.items()) names += (names.empty() ? "" : ", ") + dk;
      throw UsageError(fam.info.name + ": unknown parameter '" + k + "' (expected one of: " + names + ")");
    }
    if (k == "left") {
      if (!v.is_object()) throw UsageError("product: parameter left must be a system spec object");
    } else if (!v.is_number()) {
      throw UsageError(fam.info.name + ": parameter " + k + " must be a number");
    }
    params[k] = v;
  }
  if (params.contains("left")) params["left"] = spec_to_json(resolve_spec(spec_from_json(params["left"])));
  fam.check(params);
  r.params = params;
  if (r.mesh_radii.empty() && r.covers.empty()) r.mesh_radii = fam.radii;
  if (r.horizon == 0) r.horizon = fam.horizon;
  if (r.eps.empty()) r.eps = fam.eps;
  for (double x : r.mesh_radii)
    if (!(x > 0.0)) throw UsageError("mesh radii must be positive");
  for (std::size_t i = 0; i < r.eps.size(); ++i)
    if (!(r.eps[i] > 0.0) || (i > 0 && !(r.eps[i] < r.eps[i - 1])))
      throw UsageError("eps values must be positive and decreasing");
  static const std::vector<std::string> known_keys{"h", "dimb", "dimh", "h_L_lower", "h_L_upper", "l", "L"};
  for (const auto& [k, v] : r.known.items()) {
    if (std::find(known_keys.begin(), known_keys.end(), k) == known_keys.end())
      throw UsageError("unknown reference value '" + k + "' in known");
    if (!v.is_number()) throw UsageError("reference value " + k + " must be a number");
  }
  return r;
}

SystemBundle generate_system(const SystemSpec& raw) {
  const SystemSpec spec = resolve_spec(raw);
  const Family& fam = find_family(spec.family);
  Built b = fam.build(spec.params);
  require_valid_map(b.space, b.map);
  apply_override(b.known.h, spec.known, "h");
  apply_override(b.known.dimb, spec.known, "dimb");
  apply_override(b.known.dimh, spec.known, "dimh");
  apply_override(b.known.h_L_lower, spec.known, "h_L_lower");
  apply_override(b.known.h_L_upper, spec.known, "h_L_upper");
  apply_override(b.known.l, spec.known, "l");
  apply_override(b.known.L, spec.known, "L");

  std::vector<NamedCover> covers;
  for (double r : spec.mesh_radii) covers.push_back({"mesh_r=" + num(r), r, mesh_cover(b.space, r)});
  for (std::size_t i = 0; i < spec.covers.size(); ++i) {
    std::vector<PointSet> members;
    for (const auto& m : spec.covers[i]) {
      for (PointId x : m) b.space.check_point(x);
      members.emplace_back(m);
    }
    Cover c = Cover::from_sets(b.space.size(), members);
    require_valid_cover(b.space, c);
    const double d = cover_diam(b.space, c);
    covers.push_back({"explicit_" + std::to_string(i + 1), d, std::move(c)});
  }
  std::vector<double> scales;
  for (int k = 2; k <= 5; ++k) scales.push_back(std::ldexp(b.space.diameter(), -k));
  return SystemBundle{spec, std::move(b.space), std::move(b.map), std::move(covers), std::move(scales),
                      std::move(b.known)};
}

}  // namespace lebdyn
