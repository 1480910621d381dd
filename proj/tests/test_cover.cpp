#include <doctest.h>

#include "lebdyn/cover.hpp"
#include "lebdyn/errors.hpp"
#include "lebdyn/metric_core.hpp"
#include "support.hpp"

using namespace lebdyn;

namespace {

FiniteMetricSpace line3() { return line_space({0.0, 0.5, 1.0}); }

Cover halves() { return Cover::from_sets(3, {PointSet{0, 1}, PointSet{1, 2}}); }

}  // namespace

TEST_CASE("validate_cover") {
  const auto s = line3();
  CHECK(validate_cover(s, halves()).empty());

  const auto v = validate_cover(s, Cover::from_sets(3, {PointSet{0}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == "uncovered");
  CHECK(v[0].points == PointSet{1, 2});

  const auto e = validate_cover(s, Cover::from_sets(3, {PointSet{0, 1, 2}, PointSet{}}));
  REQUIRE(e.size() == 1);
  CHECK(e[0].kind == "empty_member");
  CHECK(e[0].member == 1);

  CHECK_THROWS_AS(require_valid_cover(s, Cover::from_sets(3, {PointSet{0}})), UsageError);
}

TEST_CASE("lebesgue_at_point and lebesgue_number on the line") {
  const auto s = line3();
  CHECK(lebesgue_at_point(s, halves(), 0).value() == 1.0);
  CHECK(lebesgue_at_point(s, halves(), 1).value() == 0.5);
  const auto r = lebesgue_number(s, halves());
  CHECK(r.delta == 0.5);
  CHECK(r.argmin_point == 1);
  CHECK_FALSE(r.capped);

  const auto whole = lebesgue_number(s, Cover::whole(3));
  CHECK(whole.capped);
  CHECK(whole.delta == 1.0);
  CHECK(lebesgue_at_point(s, Cover::whole(3), 0).is_infinite());
}

TEST_CASE("two-point space with singleton cover") {
  const auto s = line_space({0.0, 1.0});
  const auto u = Cover::from_sets(2, {PointSet{0}, PointSet{1}});
  CHECK(lebesgue_at_point(s, u, 0).value() == 1.0);
  CHECK(lebesgue_number(s, u).delta == 1.0);
}

TEST_CASE("join") {
  const auto s = line3();
  const auto j = join(s, halves(), Cover::whole(3));
  CHECK(j.member_sets() == halves().member_sets());

  const auto v = Cover::from_sets(3, {PointSet{0}, PointSet{1, 2}});
  const auto uv = join(s, halves(), v);
  CHECK(oracle::canon(conv::family(uv)) == oracle::Family{{0}, {1}, {1, 2}});
  CHECK(lebesgue_number(s, join(s, halves(), halves())).delta == lebesgue_number(s, halves()).delta);
  CHECK(is_finer(uv, halves()));
}

TEST_CASE("is_finer and cover_diam") {
  const auto s = line3();
  CHECK_FALSE(is_finer(Cover::whole(3), halves()));
  CHECK(cover_diam(s, halves()) == 0.5);
  CHECK(cover_diam(s, Cover::whole(3)) == 1.0);
  CHECK(cover_diam(s, Cover::from_sets(3, {PointSet{0}, PointSet{1}, PointSet{2}})) == 0.0);
}

TEST_CASE("mesh_cover") {
  const auto s = line3();
  const auto m = mesh_cover(s, 0.6);
  CHECK(m.member_sets() == std::vector<PointSet>{PointSet{0, 1}, PointSet{0, 1, 2}, PointSet{1, 2}});
  const auto big = mesh_cover(s, 5.0);
  REQUIRE(big.size() == 1);
  CHECK(big.whole_space_member());
  CHECK(lebesgue_number(s, mesh_cover(s, 0.3)).delta > 0.0);
}

TEST_CASE("min_subcover and delta_minimal_subcovers") {
  const auto s = line3();
  const auto u = Cover::from_sets(3, {PointSet{0}, PointSet{1}, PointSet{2}, PointSet{0, 1}});
  const auto r = min_subcover(s, u, SolveMode::exact);
  CHECK(r.size == 2);
  CHECK(r.exact);
  CHECK(r.witness.member_sets() == std::vector<PointSet>{PointSet{2}, PointSet{0, 1}});

  // Only {{0, 0.5}, {1}} has size 2; its Lebesgue number is min(1, 0.5, 0.5).
  const double expected = oracle::delta(oracle::matrix_of(s), {{0, 1}, {2}});
  CHECK(expected == 0.5);
  const auto d = delta_minimal_subcovers(s, u);
  CHECK(d.min_size == 2);
  CHECK(d.delta == expected);
  CHECK(d.subcovers_examined == 1);

  const auto with_whole = Cover::from_sets(3, {PointSet{0}, PointSet{0, 1, 2}});
  CHECK(min_subcover(s, with_whole, SolveMode::exact).size == 1);
  const auto dw = delta_minimal_subcovers(s, with_whole);
  CHECK(dw.capped);
  CHECK(dw.delta == 1.0);

  const auto dup = Cover::from_sets(3, {PointSet{0, 1}, PointSet{0, 1}, PointSet{1, 2}, PointSet{1, 2}});
  CHECK(min_subcover(s, dup, SolveMode::exact).size == 2);
}

TEST_CASE("property: Lebesgue number, join and minimum subcovers match the oracles") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const auto s = gen::space(rng, 3 + trial % 18);
    const auto d = oracle::matrix_of(s);
    const auto a = gen::cover(rng, s.size(), 6);
    const auto b = gen::cover(rng, s.size(), 6);
    const auto ca = conv::cover(s.size(), a);
    const auto cb = conv::cover(s.size(), b);
    const double da = conv::delta(s, ca);
    const double db = conv::delta(s, cb);
    CHECK(da == oracle::delta(d, a));

    // join formula and monotonicity
    const auto j = join(s, ca, cb);
    CHECK(oracle::canon(conv::family(j)) == oracle::canon(oracle::join(a, b)));
    CHECK(rel_equal(conv::delta(s, j), std::min(da, db)));
    if (is_finer(ca, cb)) CHECK(da <= db);

    // a cover finer than its own Lebesgue scale
    if (!std::isinf(db) && cover_diam(s, ca) < db) CHECK(is_finer(ca, cb));

    const auto all = oracle::minimum_subcovers(a, s.size());
    const auto ms = min_subcover(s, ca, SolveMode::exact);
    CHECK(ms.size == all.front().size());
    CHECK(min_subcover(s, ca, SolveMode::greedy).size >= ms.size);
    double best = -oracle::kInf;
    for (const auto& pick : all) {
      oracle::Family w;
      for (auto i : pick) w.push_back(a[i]);
      best = std::max(best, oracle::delta(d, w));
    }
    const auto dm = delta_minimal_subcovers(s, ca);
    CHECK((dm.capped ? oracle::kInf : dm.delta) == best);

    // containment witness: every ball of radius delta lies in a member
    if (!std::isinf(da)) {
      for (PointId x = 0; x < s.size(); ++x) {
        const auto bx = ball(s, x, da);
        bool inside = false;
        for (const auto& m : ca.member_sets()) inside = inside || is_subset(bx, m);
        CHECK(inside);
      }
    }

    // maximal_members keeps delta and S
    const auto mm = maximal_members(ca);
    CHECK(conv::delta(s, mm) == da);
    CHECK(min_subcover(s, mm, SolveMode::exact).size == ms.size);
  }
}

TEST_CASE("property: N(delta(W)) >= |W| for minimum subcovers") {
  gen::Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = gen::space(rng, 4 + trial % 12);
    const auto d = oracle::matrix_of(s);
    const auto u = gen::cover(rng, s.size(), 6);
    for (const auto& pick : oracle::minimum_subcovers(u, s.size())) {
      oracle::Family w;
      for (auto i : pick) w.push_back(u[i]);
      const double dw = oracle::delta(d, w);
      if (std::isinf(dw)) continue;
      CHECK(covering_number(s, dw, SolveMode::exact).count >= w.size());
    }
  }
}
