#include <doctest.h>

#include <cmath>

#include "lebdyn/errors.hpp"
#include "lebdyn/metric_core.hpp"
#include "support.hpp"

using namespace lebdyn;

namespace {

FiniteMetricSpace line3() { return line_space({0.0, 0.5, 1.0}); }

}  // namespace

TEST_CASE("validate_space: valid line has no violations") { CHECK(validate_space(line3()).empty()); }

TEST_CASE("validate_space: asymmetric matrix") {
  const auto s = matrix_space(2, {0, 1, 2, 0});
  const auto v = validate_space(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].axiom == "symmetry");
  CHECK(v[0].points == std::vector<PointId>{0, 1});
}

TEST_CASE("validate_space: triangle violation names the triple") {
  const auto s = matrix_space(3, {0, 1, 3, 1, 0, 1, 3, 1, 0});
  const auto v = validate_space(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].axiom == "triangle");
  CHECK(v[0].points == std::vector<PointId>{0, 1, 2});
  CHECK(v[0].excess == doctest::Approx(1.0));
}

TEST_CASE("validate_space: zero off-diagonal") {
  const auto v = validate_space(matrix_space(2, {0, 0, 0, 0}));
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].axiom == "positivity");
}

TEST_CASE("ball uses strict inequality") {
  const auto s = line3();
  CHECK(ball(s, 1, 0.6) == PointSet{0, 1, 2});
  CHECK(ball(s, 0, 0.6) == PointSet{0, 1});
  CHECK(ball(s, 0, 0.5) == PointSet{0});
  for (PointId x = 0; x < 3; ++x) CHECK(ball(s, x, 0.0).empty());
}

TEST_CASE("dist_to_complement") {
  const auto s = line3();
  CHECK(dist_to_complement(s, PointSet{0, 1}, 0).value() == 1.0);
  CHECK(dist_to_complement(s, PointSet{1}, 1).value() == 0.5);
  CHECK(dist_to_complement(s, PointSet{0, 1, 2}, 2).is_infinite());
}

TEST_CASE("covering_number on the 3-point line") {
  const auto s = line3();
  const auto one = covering_number(s, 0.6, SolveMode::exact);
  CHECK(one.count == 1);
  CHECK(one.centers == PointSet{1});
  CHECK(one.exact);
  CHECK(covering_number(s, 0.3, SolveMode::exact).count == 3);
  CHECK(covering_number(s, 5.0, SolveMode::greedy).count == 1);
}

TEST_CASE("box_dim_estimate: uniform grids") {
  std::vector<double> xs;
  for (int i = 0; i <= 64; ++i) xs.push_back(i / 64.0);
  const auto line = line_space(xs);
  const auto d1 = box_dim_estimate(line, {0.5, 0.25, 0.125, 0.0625, 0.03125}, SolveMode::greedy);
  CHECK(d1.slope >= 0.85);
  CHECK(d1.slope <= 1.15);

  std::vector<double> ys;
  for (int i = 0; i <= 16; ++i) ys.push_back(i / 16.0);
  const auto side = line_space(ys);
  const auto square = max_product(side, side);
  const auto d2 = box_dim_estimate(square, {0.5, 0.25, 0.125, 0.0625}, SolveMode::greedy);
  CHECK(d2.slope >= 1.8);
  CHECK(d2.slope <= 2.2);

  const auto point = line_space({0.3});
  CHECK(box_dim_estimate(point, {0.5, 0.25, 0.125}, SolveMode::exact).slope == 0.0);
}

TEST_CASE("box_dim_estimate rejects short or increasing grids") {
  CHECK_THROWS_AS((void)box_dim_estimate(line3(), {0.5, 0.25}, SolveMode::exact), UsageError);
  CHECK_THROWS_AS((void)box_dim_estimate(line3(), {0.1, 0.25, 0.5}, SolveMode::exact), UsageError);
}

TEST_CASE("scale_metric") {
  const auto s = line3();
  const auto same = scale_metric(s, 1.0);
  for (PointId x = 0; x < 3; ++x)
    for (PointId y = 0; y < 3; ++y) CHECK(same.dist(x, y) == s.dist(x, y));
  const auto big = scale_metric(s, 3.0);
  CHECK(big.dist(0, 2) == 3.0);
  CHECK_THROWS_AS((void)scale_metric(s, 0.0), UsageError);
}

TEST_CASE("property: ball of radius dist_to_complement stays inside the set") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = gen::space(rng, 3 + trial % 20);
    const auto u = gen::cover(rng, s.size(), 5);
    for (const auto& m : u) {
      const PointSet set(std::vector<PointId>(m.begin(), m.end()));
      for (PointId x : set) {
        const auto g = dist_to_complement(s, set, x);
        if (g.is_infinite()) continue;
        CHECK(is_subset(ball(s, x, g.value()), set));
      }
    }
  }
}

TEST_CASE("property: covering counts, exact vs oracle, greedy above exact, monotone in gamma") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = gen::space(rng, 4 + trial % 11);
    const auto d = oracle::matrix_of(s);
    std::size_t prev = 0;
    for (double gamma : {1.5, 0.5, 0.25, 0.1, 0.03}) {
      const auto exact = covering_number(s, gamma, SolveMode::exact);
      const auto greedy = covering_number(s, gamma, SolveMode::greedy);
      CHECK(exact.exact);
      CHECK(exact.count == oracle::covering_number(d, gamma));
      CHECK(greedy.count >= exact.count);
      CHECK(exact.count >= prev);
      prev = exact.count;
    }
  }
}

TEST_CASE("property: scaling multiplies gaps by c and preserves covering counts at c*gamma") {
  gen::Rng rng(13);
  for (double c : {0.1, 3.0, 10.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = gen::space(rng, 6 + trial);
      const auto t = scale_metric(s, c);
      const auto u = gen::cover(rng, s.size(), 4);
      for (const auto& m : u) {
        const PointSet set(std::vector<PointId>(m.begin(), m.end()));
        for (PointId x : set) {
          const auto a = dist_to_complement(s, set, x);
          const auto b = dist_to_complement(t, set, x);
          REQUIRE(a.is_infinite() == b.is_infinite());
          if (!a.is_infinite()) CHECK(rel_equal(b.value(), c * a.value()));
        }
      }
      // Radii placed between distance levels so that rounding cannot move a ball boundary.
      for (double gamma : {0.3 + 1.0 / 4096, 0.7 + 1.0 / 4096})
        CHECK(covering_number(t, c * gamma, SolveMode::exact).count ==
              covering_number(s, gamma, SolveMode::exact).count);
    }
  }
}

TEST_CASE("least_squares_slope") {
  CHECK(least_squares_slope({1, 2, 3, 4}, {3, 5, 7, 9}) == doctest::Approx(2.0));
}
