#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "modratio/wellshaped.hpp"

using namespace modratio;

TEST(Shapes, MeasuresAndMembership) {
  const auto ball = WellShapedSet::ball(6, 0.4);
  EXPECT_NEAR(ball.measure, std::pow(std::numbers::pi, 3) * std::pow(0.4, 6) / 6.0, 1e-12);
  const std::vector<double> centre(6, 0.5), corner(6, 0.0);
  EXPECT_TRUE(ball.member(centre));
  EXPECT_FALSE(ball.member(corner));
  EXPECT_NEAR(WellShapedSet::unit_cube(4).measure, 1.0, 0.0);
  EXPECT_EQ(WellShapedSet::empty(4).measure, 0.0);
  const auto ell = WellShapedSet::ellipsoid({0.4, 0.3, 0.2, 0.1});
  EXPECT_NEAR(ell.measure, std::numbers::pi * std::numbers::pi / 2.0 * 0.4 * 0.3 * 0.2 * 0.1, 1e-12);
  EXPECT_THROW(parse_shape("blob", 6), DomainError);
  EXPECT_THROW(parse_shape("ellipsoid:0.1,0.2", 6), DomainError);
  EXPECT_EQ(parse_shape("ball:0.3", 4).dim, 4);
}

TEST(Shapes, HalfspaceCapVolumeMatchesMonteCarlo) {
  const auto cap = WellShapedSet::halfspace_cap({1.0, 2.0, 0.5}, 1.2);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int hits = 0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    hits += cap.member(x);
  }
  EXPECT_NEAR(cap.measure, static_cast<double>(hits) / n, 4e-3);
}

TEST(Shapes, CubeInsideAgreesWithVertexSampling) {
  // Convex sets: a cube is inside exactly when all its vertices are.
  const auto ball = WellShapedSet::ball(3, 0.35);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 5000; ++t) {
    const std::vector<double> lo{u(rng), u(rng), u(rng)};
    const double side = 0.3 * u(rng);
    bool all = true;
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<double> v(lo);
      for (int i = 0; i < 3; ++i) v[i] += (mask >> i & 1) * side;
      all = all && ball.member(v);
    }
    ASSERT_EQ(ball.cube_inside(lo, side), all);
  }
}

TEST(CubesInside, Examples) {
  const auto cube = WellShapedSet::unit_cube(6);
  EXPECT_EQ(count_cubes_inside(cube, 4, make_shift(6, 101, 2)), 729);
  EXPECT_EQ(count_cubes_inside(WellShapedSet::ball(6, 0.1), 2, make_shift(6, 101, 1)), 0);
  for (std::int64_t k = 2; k <= 16; ++k)
    EXPECT_EQ(count_cubes_inside(cube, k, make_shift(6, 1009, 4)), static_cast<std::int64_t>(std::pow(k - 1, 6)));
}

TEST(CubesInside, BallCountMatchesFarthestVertexLoop) {
  const auto ball = WellShapedSet::ball(6, 0.4);
  const auto shift = make_shift(6, 101, 3);
  const int k = 8;
  // Every u with a cube corner in [alpha - 9/8, alpha + 9/8] covers [0, 1].
  std::int64_t direct = 0;
  std::vector<int> u(6, -9);
  for (;;) {
    double far2 = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double lo = shift.alpha[i] + u[i] / 8.0;
      const double d = std::max(std::abs(lo - 0.5), std::abs(lo + 1.0 / 8 - 0.5));
      far2 += d * d;
    }
    direct += far2 <= 0.16;
    int i = 0;
    for (; i < 6; ++i) {
      if (u[i] < 9) {
        ++u[i];
        break;
      }
      u[i] = -9;
    }
    if (i == 6) break;
  }
  EXPECT_EQ(count_cubes_inside(ball, k, shift), direct);
  EXPECT_GT(direct, 0);
}

TEST(Shift, AdmissibleAndDeterministic) {
  const auto a = make_shift(6, 61, 3, 42), b = make_shift(6, 61, 3, 42);
  EXPECT_EQ(a.alpha, b.alpha);
  for (double alpha : a.alpha) {
    EXPECT_GT(alpha, 0.0);
    EXPECT_LT(alpha, 1.0);
    for (int u = -9; u <= 17; ++u) {
      const double v = 61 * (alpha + u / 8.0);
      EXPECT_GT(std::abs(v - std::round(v)), 1e-7);
    }
  }
}

TEST(ChooseM, Examples) {
  EXPECT_EQ(choose_M(127, 3).M, 3);
  EXPECT_FALSE(choose_M(127, 3).degenerate);
  const auto tiny = choose_M(2, 3);
  EXPECT_EQ(tiny.M, 0);
  EXPECT_TRUE(tiny.degenerate);
  EXPECT_FALSE(tiny.warning.empty());
  EXPECT_EQ(choose_M(1009, 4).M, 5);
  EXPECT_TRUE(choose_M(1009, 2).degenerate);
}

TEST(Dyadic, FirstLayerIsTheCoarseGrid) {
  const auto ball = WellShapedSet::ball(4, 0.45);
  const auto shift = make_shift(4, 101, 1);
  const auto layers = dyadic_layers(ball, 1, shift);
  std::set<std::vector<std::int32_t>> a, b;
  for (const auto& c : layers.layers[0]) a.insert(c.u);
  for (const auto& c : cubes_inside(ball, 2, shift)) b.insert(c.u);
  EXPECT_EQ(a, b);
}

TEST(Dyadic, UnitCubeLayers) {
  const auto audit = audit_dyadic_layers(WellShapedSet::unit_cube(6), 2, make_shift(6, 1009, 2));
  EXPECT_EQ(audit.layer_sizes, (std::vector<std::int64_t>{1, 665}));
  EXPECT_TRUE(audit.ok());
}

TEST(Dyadic, BallAuditAndCoverage) {
  const auto ball = WellShapedSet::ball(6, 0.4);
  for (int M = 1; M <= 4; ++M) {
    const auto audit = audit_dyadic_layers(ball, M, make_shift(6, 1009, M));
    EXPECT_TRUE(audit.ok());
    EXPECT_LE(audit.covered_measure, ball.measure);
    EXPECT_LE(ball.measure - audit.covered_measure, ball.boundary_constant * std::sqrt(6.0) * std::ldexp(1.0, -M));
  }
}

TEST(Dyadic, LayersAreDisjointAsSets) {
  // Random points: each lies in at most one layer cube.
  const auto ball = WellShapedSet::ball(3, 0.4);
  const auto shift = make_shift(3, 101, 5);
  const auto layers = dyadic_layers(ball, 5, shift);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double covered = 0.0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    int hits = 0;
    for (const auto& layer : layers.layers)
      for (const auto& c : layer) {
        const auto lo = c.lower(shift);
        bool in = true;
        for (int i = 0; i < 3; ++i) in = in && x[i] >= lo[i] && x[i] < lo[i] + c.side();
        hits += in;
      }
    ASSERT_LE(hits, 1);
    if (hits == 1) {
      EXPECT_TRUE(ball.member(x));
      covered += 1.0;
    }
  }
  EXPECT_NEAR(covered / n, layers.covered_measure, 0.015);
}

TEST(Blowup, UnitCubeSandwich) {
  const PrimeContext ctx(7);
  const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
  const auto cube = WellShapedSet::unit_cube(6);
  EXPECT_EQ(exact_blowup_count(coeffs, cube, ctx), 10584);
  const auto lower = count_in_blowup(coeffs, cube, ctx);
  EXPECT_LE(lower.layer_sum, 10584);
  EXPECT_LE(10584 - lower.layer_sum, lower.gap_bound);
}

TEST(Blowup, EmptyAndTinySets) {
  const PrimeContext ctx(31);
  const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
  EXPECT_EQ(exact_blowup_count(coeffs, WellShapedSet::empty(6), ctx), 0);
  EXPECT_EQ(count_in_blowup(coeffs, WellShapedSet::empty(6), ctx).layer_sum, 0);
  EXPECT_EQ(count_in_blowup(coeffs, WellShapedSet::ball(6, 0.01), ctx).layer_sum, 0);
  EXPECT_THROW(count_in_blowup(coeffs, WellShapedSet::ball(4, 0.3), ctx), DomainError);
}

TEST(Blowup, BallSandwichAtP31) {
  const PrimeContext ctx(31);
  const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
  const auto ball = WellShapedSet::ball(6, 0.4);
  const auto exact = exact_blowup_count(coeffs, ball, ctx);
  EXPECT_EQ(exact, 611760);
  for (int M : {1, 2, 3, 4}) {
    const auto lower = count_in_blowup(coeffs, ball, ctx, M);
    EXPECT_LE(lower.layer_sum, exact);
    EXPECT_LE(static_cast<double>(exact - lower.layer_sum), lower.gap_bound);
  }
}

TEST(Blowup, ExactCountMatchesNaiveEnumeration) {
  // n = 2 keeps the naive loop small.
  const PrimeContext ctx(13);
  const auto coeffs = CoefficientVector::make(3, {2, 5}, ctx);
  const auto ball = WellShapedSet::ball(4, 0.45);
  std::int64_t direct = 0;
  std::vector<double> pt(4);
  for (std::int64_t x1 = 0; x1 < 13; ++x1)
    for (std::int64_t y1 = 1; y1 < 13; ++y1)
      for (std::int64_t x2 = 0; x2 < 13; ++x2)
        for (std::int64_t y2 = 1; y2 < 13; ++y2) {
          pt = {x1 / 13.0, y1 / 13.0, x2 / 13.0, y2 / 13.0};
          if (!ball.member(pt)) continue;
          direct += ctx.add(ctx.mul(2, ctx.mul(x1, mod_inverse(y1, ctx))), ctx.mul(5, ctx.mul(x2, mod_inverse(y2, ctx)))) == 3;
        }
  EXPECT_EQ(exact_blowup_count(coeffs, ball, ctx, 2), direct);
}
