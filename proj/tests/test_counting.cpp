#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "modratio/counting.hpp"

using namespace modratio;

namespace {

ProductRegion boxes(int n, Interval x, Interval y) {
  ProductRegion out;
  for (int j = 0; j < n; ++j) out.factors.emplace_back(BoxRegion{x, y});
  return out;
}

}  // namespace

TEST(CoefficientVector, ParseAndValidate) {
  const PrimeContext ctx(7);
  const auto c = CoefficientVector::parse("9,1,-1", ctx);
  EXPECT_EQ(c.a0, 2);
  EXPECT_EQ(c.a, (std::vector<std::int64_t>{1, 6}));
  EXPECT_EQ(c.to_string(), "2,1,6");
  EXPECT_THROW(CoefficientVector::parse("0", ctx), DomainError);
  EXPECT_THROW(CoefficientVector::parse("0,7", ctx), DomainError);
  EXPECT_THROW(CoefficientVector::parse("0,x", ctx), DomainError);
}

TEST(Count, SmallExamples) {
  const PrimeContext p7(7), p11(11);
  const auto one = boxes(1, Interval::closed(0, 6), Interval::closed(1, 6));
  EXPECT_EQ(count_bruteforce(CoefficientVector::make(0, {1}, p7), one, p7), 6);
  EXPECT_EQ(count_fast(CoefficientVector::make(0, {1}, p7), one, p7).count, 6);
  const auto full = boxes(1, Interval::closed(0, 10), Interval::closed(1, 10));
  EXPECT_EQ(count_bruteforce(CoefficientVector::make(3, {1}, p11), full, p11), 10);
  EXPECT_EQ(count_fast(CoefficientVector::make(3, {1}, p11), full, p11).count, 10);
}

TEST(Count, ThreeRatiosAgreeWithFullEnumeration) {
  const PrimeContext ctx(13);
  const auto coeffs = CoefficientVector::make(1, {1, 1, 1}, ctx);
  const auto regions = boxes(3, Interval::closed(1, 5), Interval::closed(1, 5));
  const auto full = count_bruteforce(coeffs, regions, ctx, BruteforceMode::FullEnumerate);
  EXPECT_EQ(full, 1184);
  EXPECT_EQ(count_bruteforce(coeffs, regions, ctx), full);
  const auto fast = count_fast(coeffs, regions, ctx);
  EXPECT_EQ(fast.count, full);
  EXPECT_LT(fast.residual, kRoundingThreshold);
  EXPECT_NEAR(fast.main_term, std::pow(25.0, 3) / 13.0, 1e-9);
}

TEST(Count, CubicBoxAtP101MatchesBruteForce) {
  const PrimeContext ctx(101);
  const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
  const std::int64_t H = 25;
  const auto regions = boxes(3, Interval::closed(1, H), Interval::closed(1, H));
  const auto fast = count_fast(coeffs, regions, ctx);
  EXPECT_EQ(fast.count, count_bruteforce(coeffs, regions, ctx));
  const double envelope = std::pow(101.0, 0.5) * std::pow(25.0, 2.5) * std::pow(101.0, 0.2);
  EXPECT_LE(std::abs(static_cast<double>(fast.count) - std::pow(25.0, 6) / 101.0), envelope);
}

TEST(Count, EmptyIntervalGivesZero) {
  const PrimeContext ctx(13);
  ProductRegion regions = boxes(2, Interval::closed(1, 5), Interval::closed(1, 5));
  regions.factors.emplace_back(BoxRegion{Interval::none(), Interval::closed(1, 5)});
  const auto coeffs = CoefficientVector::make(1, {1, 2, 3}, ctx);
  EXPECT_EQ(count_fast(coeffs, regions, ctx).count, 0);
  EXPECT_EQ(count_bruteforce(coeffs, regions, ctx), 0);
}

TEST(Count, MixedRegionsAgreeWithBruteForce) {
  const PrimeContext ctx(29);
  ProductRegion regions;
  regions.factors.emplace_back(DiskRegion::make(10, 12, 4));
  regions.factors.emplace_back(BoxRegion{Interval::closed(0, 9), Interval::closed(0, 11)});
  regions.factors.emplace_back(ConvexRegion{Interval::closed(2, 4),
                                            {Interval::closed(1, 5), Interval::closed(2, 9), Interval::closed(3, 4)}});
  for (std::int64_t a0 = 0; a0 < 29; a0 += 4) {
    const auto coeffs = CoefficientVector::make(a0, {3, 5, 28}, ctx);
    EXPECT_EQ(count_fast(coeffs, regions, ctx, 2).count, count_bruteforce(coeffs, regions, ctx));
  }
}

TEST(Count, SumOverA0IsTheNonzeroPointProduct) {
  const PrimeContext ctx(17);
  const auto regions = boxes(2, Interval::closed(0, 12), Interval::closed(0, 9));
  std::int64_t total = 0;
  for (std::int64_t a0 = 0; a0 < 17; ++a0) total += count_fast(CoefficientVector::make(a0, {2, 3}, ctx), regions, ctx).count;
  EXPECT_EQ(total, 13 * 9 * 13 * 9);
}

TEST(Count, WorkerCountDoesNotChangeResult) {
  const PrimeContext ctx(1009);
  const auto regions = boxes(3, Interval::closed(1, 126), Interval::closed(1, 126));
  const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
  const auto one = count_fast(coeffs, regions, ctx, 1);
  const auto three = count_fast(coeffs, regions, ctx, 3);
  EXPECT_EQ(one.count, three.count);
  EXPECT_EQ(one.residual, three.residual);
  EXPECT_EQ(one.count, 3962930733);
}

TEST(Count, InputErrors) {
  const PrimeContext ctx(7);
  EXPECT_THROW(count_fast(CoefficientVector::make(0, {1, 1}, ctx), boxes(1, {0, 3}, {0, 3}), ctx), DomainError);
  EXPECT_THROW(count_fast(CoefficientVector::make(0, {1}, ctx), boxes(1, {0, 9}, {0, 3}), ctx), DomainError);
  const PrimeContext big(1009);
  EXPECT_THROW(count_bruteforce(CoefficientVector::make(0, {1, 1, 1}, big),
                                boxes(3, Interval::closed(1, 1000), Interval::closed(1, 1000)), big),
               SizeError);
}

TEST(RatioDistribution, Examples) {
  const PrimeContext p7(7);
  const auto full = ratio_distribution(Interval::closed(0, 6), Interval::closed(1, 6), p7);
  for (auto v : full.d) EXPECT_EQ(v, 6);
  const auto small = ratio_distribution(Interval::closed(1, 3), Interval::closed(1, 2), p7);
  EXPECT_EQ(small.d, (std::vector<std::int64_t>{0, 2, 1, 1, 1, 1, 0}));
  const auto none = ratio_distribution(Interval::none(), Interval::closed(1, 2), p7);
  EXPECT_EQ(none.total(), 0);
}

TEST(CrossRatio, ExamplesAndQuadrupleLoop) {
  const PrimeContext p7(7), p23(23);
  const auto X = Interval::closed(0, 6), Y = Interval::closed(1, 6);
  EXPECT_EQ(cross_ratio_count(X, Y, X, Y, p7), 252);
  const auto d1 = ratio_distribution(X, Y, p7);
  EXPECT_EQ(cross_ratio_count(X, Y, Interval::closed(3, 3), Interval::closed(5, 5), p7),
            d1.d[static_cast<std::size_t>(p7.mul(3, mod_inverse(5, p7)))]);

  const auto I = Interval::closed(1, 8), J = Interval::closed(1, 9);
  std::int64_t direct = 0;
  for (std::int64_t x1 = 1; x1 <= 8; ++x1)
    for (std::int64_t y1 = 1; y1 <= 9; ++y1)
      for (std::int64_t x2 = 1; x2 <= 8; ++x2)
        for (std::int64_t y2 = 1; y2 <= 9; ++y2) direct += (x1 * y2 - x2 * y1) % 23 == 0;
  EXPECT_EQ(cross_ratio_count(I, J, I, J, p23), direct);
  EXPECT_NEAR(cross_ratio_deviation(direct, I, J, I, J, p23), direct - 72.0 * 72.0 / 23.0, 1e-9);
}

TEST(InverseConcentration, ExamplesAndLoop) {
  const PrimeContext p13(13), p1009(1009);
  EXPECT_EQ(inverse_concentration_count(0, 12, 12, p13), 12);
  EXPECT_EQ(inverse_concentration_count(0, 12, 1, p13), 1);
  std::int64_t direct = 0;
  for (std::int64_t w = 51; w <= 150; ++w)
    for (std::int64_t z = 1; z <= 30; ++z) direct += w * z % 1009 == 1;
  const auto count = inverse_concentration_count(50, 100, 30, p1009);
  EXPECT_EQ(count, direct);
  EXPECT_LE(static_cast<double>(count), (std::sqrt(100.0 / 1009.0) * 30 + 1) * std::pow(1009.0, 0.2));
  EXPECT_THROW(inverse_concentration_count(0, 13, 1, p13), DomainError);
  EXPECT_THROW(inverse_concentration_count(0, 0, 1, p13), DomainError);
}

TEST(Coprime, Examples) {
  const PrimeContext p7(7), p11(11), p13(13);
  EXPECT_EQ(coprime_count(CoefficientVector::make(0, {1}, p7), boxes(1, Interval::closed(0, 6), Interval::closed(1, 6)), p7)
                .count,
            1);
  std::int64_t expected = 0;
  for (std::int64_t y = 1; y <= 10; ++y) expected += std::gcd(3 * y % 11, y) == 1;
  EXPECT_EQ(coprime_count(CoefficientVector::make(3, {1}, p11),
                          boxes(1, Interval::closed(0, 10), Interval::closed(1, 10)), p11)
                .count,
            expected);

  // gcd-filtered full enumeration
  std::int64_t direct = 0;
  const auto inv = [&](std::int64_t y) { return mod_inverse(y, p13); };
  for (std::int64_t x1 = 1; x1 <= 5; ++x1)
    for (std::int64_t y1 = 1; y1 <= 5; ++y1)
      for (std::int64_t x2 = 1; x2 <= 5; ++x2)
        for (std::int64_t y2 = 1; y2 <= 5; ++y2)
          for (std::int64_t x3 = 1; x3 <= 5; ++x3)
            for (std::int64_t y3 = 1; y3 <= 5; ++y3) {
              if (std::gcd(x1, y1) != 1 || std::gcd(x2, y2) != 1 || std::gcd(x3, y3) != 1) continue;
              direct += (x1 * inv(y1) + x2 * inv(y2) + x3 * inv(y3)) % 13 == 1;
            }
  EXPECT_EQ(coprime_count(CoefficientVector::make(1, {1, 1, 1}, p13),
                          boxes(3, Interval::closed(1, 5), Interval::closed(1, 5)), p13)
                .count,
            direct);
}

TEST(Coprime, RandomInstancesAgainstGcdLoop) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const std::int64_t p = std::vector<std::int64_t>{5, 7, 11, 13, 17, 19, 23}[rng() % 7];
    const PrimeContext ctx(p);
    const auto x = Interval::closed(static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(p - 1 - rng() % 3));
    const auto y = Interval::closed(static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(p - 1 - rng() % 3));
    const std::int64_t a0 = static_cast<std::int64_t>(rng() % p), a1 = 1 + static_cast<std::int64_t>(rng() % (p - 1));
    std::int64_t direct = 0;
    for (std::int64_t yy = y.lo(); yy <= y.hi(); ++yy) {
      if (yy % p == 0) continue;
      for (std::int64_t xx = x.lo(); xx <= x.hi(); ++xx)
        direct += std::gcd(xx, yy) == 1 && ctx.mul(a1, ctx.mul(xx, mod_inverse(yy, ctx))) == a0;
    }
    EXPECT_EQ(coprime_count(CoefficientVector::make(a0, {a1}, ctx), boxes(1, x, y), ctx).count, direct);
  }
}
