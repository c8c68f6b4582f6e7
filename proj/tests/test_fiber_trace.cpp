#include <doctest.h>

#include <cmath>

#include "nagao/error.hpp"
#include "nagao/fiber_trace.hpp"
#include "nagao/oracle.hpp"
#include "support.hpp"

using namespace nagao;

TEST_CASE("count_affine examples") {
  const auto f5 = make_field(5);
  CHECK(count_affine(f5, testing::plain_fiber(f5, {0, -1, 0, 1}, 3)) == 7);
  CHECK(count_affine(f5, testing::plain_fiber(f5, {1, -1, 0, 1}, 3)) == 7);
  CHECK(count_affine(f5, testing::plain_fiber(f5, {0, 0, 1, 1}, 3)) == 4);
}

TEST_CASE("points_at_infinity") {
  const auto f5 = make_field(5);
  CHECK(points_at_infinity(f5, testing::plain_fiber(f5, {1, 0, 0, 3}, 3)) == 1);
  CHECK(points_at_infinity(f5, testing::plain_fiber(f5, {1, 0, 0, 0, 0, 0, 1}, 6)) == 2);
  CHECK(points_at_infinity(f5, testing::plain_fiber(f5, {1, 0, 0, 0, 0, 0, 2}, 6)) == 0);
  CHECK_THROWS_AS(points_at_infinity(f5, testing::plain_fiber(f5, {1, 0, 1}, 3)), DegenerateDegree);

  const auto multi = testing::shipped("multicover_ex2");
  for (residue_t c = 0; c < 7; ++c) {
    CHECK(points_at_infinity(make_field(7), fiber_at(multi, make_field(7), FiberPoint::finite(c))) == 2);
  }
}

TEST_CASE("component_count") {
  const auto f5 = make_field(5);
  CHECK(std::get<std::uint32_t>(component_count(f5, testing::plain_fiber(f5, {1, -1, 0, 1}, 3))) == 1);
  CHECK(std::get<std::uint32_t>(component_count(f5, testing::plain_fiber(f5, {0, 0, 1, 1}, 3))) == 1);
  const auto square = component_count(f5, testing::plain_fiber(f5, {0, 0, 2}, 2));
  REQUIRE(std::holds_alternative<Unsupported>(square));
  CHECK(std::get<Unsupported>(square).p == 5);
  CHECK(std::get<Unsupported>(square).fiber_class == FiberClass::square_fiber);

  const auto multi = testing::shipped("multicover_ex2");
  const auto f7 = make_field(7);
  const auto singular = component_count(f7, fiber_at(multi, f7, FiberPoint::finite(2)));
  REQUIRE(std::holds_alternative<Unsupported>(singular));
  CHECK(std::get<Unsupported>(singular).fiber_class == FiberClass::multicover_singular);
  CHECK(std::get<Unsupported>(singular).c.c == 2);
}

TEST_CASE("fiber_trace examples") {
  const auto g1 = testing::shipped("shioda_g1");
  const auto f5 = make_field(5);
  const auto r = fiber_trace(f5, g1, FiberPoint::finite(0));
  REQUIRE(r);
  CHECK(r->N == 8);
  CHECK(r->m == 1);
  CHECK(r->a == -2);
  CHECK_FALSE(r->singular);

  const auto at_inf = fiber_trace(f5, g1, FiberPoint::infinity());
  REQUIRE(at_inf);
  CHECK(at_inf->a == 0);
  CHECK(at_inf->m == 1);
  CHECK(at_inf->N == 6);

  // nodal fiber y^2 = x^2 (x+1) at p = 5
  const auto nodal = testing::plain_fiber(f5, {0, 0, 1, 1}, 3);
  const auto N = count_affine(f5, nodal) + points_at_infinity(f5, nodal);
  CHECK(N == 5);
  CHECK(1 + 5 * 1 - static_cast<std::int64_t>(N) == 1);

  FamilySpec skipped = g1.spec();
  skipped.infinity = {InfinityRule::Kind::skip, 0, 1};
  const FamilyModel skip_model(skipped);
  CHECK_FALSE(fiber_trace(f5, skip_model, FiberPoint::infinity()).has_value());
  const auto all = trace_all_fibers(f5, skip_model);
  CHECK(all.infinity_skipped);
  CHECK(all.records.size() == 5);
}

TEST_CASE("unsupported fibers: drop or override") {
  const auto multi = testing::shipped("multicover_ex2");
  const auto f7 = make_field(7);
  // the shipped override assigns m=1 and two points above infinity
  const auto r = fiber_trace(f7, multi, FiberPoint::finite(0));
  REQUIRE(r);
  CHECK(r->m == 1);
  CHECK(r->singular);
  CHECK(r->N == oracle::affine_solutions(multi.spec(), 7, 0) + 2);

  FamilySpec bare = multi.spec();
  bare.overrides.clear();
  const FamilyModel no_override(bare);
  CHECK_THROWS_AS(fiber_trace(f7, no_override, FiberPoint::finite(0)), UnsupportedFiber);
  CHECK(fiber_trace(f7, no_override, FiberPoint::finite(4)).has_value());
  const auto all = trace_all_fibers(f7, no_override);
  REQUIRE(all.unsupported.has_value());
  CHECK(all.unsupported->fiber_class == FiberClass::multicover_singular);
}

TEST_CASE("exhaustive enumeration for every shipped family, p <= 23") {
  for (const char* stem : testing::kShippedFamilies) {
    const auto model = testing::shipped(stem);
    const auto& spec = model.spec();
    for (auto p : primes_in_range(3, 23)) {
      if (model.is_bad(p)) continue;
      const auto ctx = make_field(p);
      const auto all = trace_all_fibers(ctx, model);
      REQUIRE_FALSE(all.unsupported.has_value());
      REQUIRE(all.records.size() == p + 1);
      for (residue_t c = 0; c < p; ++c) {
        CAPTURE(stem);
        CAPTURE(p);
        CAPTURE(c);
        const auto fiber = fiber_at(model, ctx, FiberPoint::finite(c));
        const auto affine = count_affine(ctx, fiber);
        CHECK(affine == oracle::affine_solutions(spec, p, c));
        const auto single = fiber_trace(ctx, model, FiberPoint::finite(c));
        REQUIRE(single);
        const auto& bulk = all.records[c];
        CHECK(bulk.N == single->N);
        CHECK(bulk.a == single->a);
        CHECK(bulk.m == single->m);
        CHECK(bulk.singular == single->singular);
        // N = 1 - a + p m, both directions
        const auto N = static_cast<std::int64_t>(single->N);
        CHECK(N == 1 - single->a + static_cast<std::int64_t>(p) * single->m);
        CHECK(single->a == 1 + static_cast<std::int64_t>(p) * single->m - N);
        if (!single->singular) {
          CHECK(single->m == 1);
          CHECK(static_cast<double>(std::abs(single->a)) <= 2.0 * spec.genus * std::sqrt(double(p)));
        }
      }
    }
  }
}

TEST_CASE("nodal fibers: plane count from the normalization") {
  // irreducible nodal fibers of the Shioda families, checked against singular points found by enumeration
  int checked = 0;
  for (const char* stem : {"shioda_g1", "shioda_g2"}) {
    const auto model = testing::shipped(stem);
    for (auto p : primes_in_range(3, 13)) {
      if (model.is_bad(p)) continue;
      const auto ctx = make_field(p);
      for (residue_t c = 0; c < p; ++c) {
        const auto fiber = fiber_at(model, ctx, FiberPoint::finite(c));
        if (!is_singular_fiber(ctx, fiber)) continue;
        const auto rec = fiber_trace(ctx, model, FiberPoint::finite(c));
        REQUIRE(rec);
        const auto sp = oracle::hyperelliptic_singular_points(model.spec().polys[0], p, c);
        const auto expected =
            static_cast<std::int64_t>(normalization_count(ctx, fiber)) - sp.points_above + sp.rational_nodes;
        CHECK(static_cast<std::int64_t>(rec->N) == expected);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);

  // hand-made: y^2 = x^2 (x+1) over F_5 normalizes to w^2 = x + 1 (6 points with infinity)
  const auto f5 = make_field(5);
  const auto nodal = testing::plain_fiber(f5, {0, 0, 1, 1}, 3);
  CHECK(normalization_count(f5, nodal) == 6);
}

TEST_CASE("Weil bound on smooth fibers, p <= 1000") {
  for (const char* stem : testing::kShippedFamilies) {
    const auto model = testing::shipped(stem);
    for (auto p : primes_in_range(3, 400)) {
      if (model.is_bad(p)) continue;
      const auto all = trace_all_fibers(make_field(p), model);
      for (const auto& r : all.records) {
        if (r.singular) continue;
        // a^2 <= 4 g^2 p, exact
        REQUIRE(r.a * r.a <= 4LL * model.spec().genus * model.spec().genus * p);
      }
    }
  }
}
