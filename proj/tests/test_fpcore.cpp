#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "modratio/fpcore.hpp"

using namespace modratio;

TEST(PrimeContext, RejectsCompositesAndSmallModuli) {
  EXPECT_THROW(PrimeContext(1), DomainError);
  EXPECT_THROW(PrimeContext(2), DomainError);
  EXPECT_THROW(PrimeContext(9), DomainError);
  EXPECT_THROW(PrimeContext(561), DomainError);
  EXPECT_NO_THROW(PrimeContext(1'000'003));
}

TEST(PrimeContext, MillerRabinMatchesTrialDivision) {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial(n)) << n;
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to bases 2,3,5,7
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(1, PrimeContext(7)), 1);
  EXPECT_EQ(mod_inverse(2, PrimeContext(7)), 4);
  EXPECT_EQ(mod_inverse(37, PrimeContext(101)), 71);
  EXPECT_THROW(mod_inverse(0, PrimeContext(7)), DomainError);
  EXPECT_THROW(mod_inverse(14, PrimeContext(7)), DomainError);
}

TEST(ModInverse, TableAgreesWithEuclidAndIsAnInvolution) {
  for (std::int64_t p : {3, 5, 101, 1009, 65537}) {
    const PrimeContext with(p), without(p, false);
    for (std::int64_t a = 1; a < p; ++a) {
      const auto inv = mod_inverse(a, with);
      ASSERT_EQ(inv, mod_inverse(a, without));
      ASSERT_EQ(with.mul(a, inv), 1);
      ASSERT_EQ(mod_inverse(inv, with), a);
    }
  }
}

TEST(CenteredResidue, Examples) {
  const PrimeContext p7(7);
  EXPECT_EQ(centered_residue(1, 1, p7).value, 1);
  EXPECT_EQ(centered_residue(6, 1, p7).value, -1);
  EXPECT_EQ(centered_residue(1, 2, p7).value, -3);
  EXPECT_THROW(centered_residue(1, 7, p7), DomainError);
}

TEST(CenteredResidue, RangeAndCongruence) {
  const PrimeContext ctx(101);
  for (std::int64_t u = -150; u < 150; ++u)
    for (std::int64_t v = 1; v < 101; ++v) {
      const auto w = centered_residue(u, v, ctx).value;
      ASSERT_LT(2 * std::llabs(w), 101);
      ASSERT_EQ(ctx.reduce(w * v - u), 0);
    }
}

TEST(Character, Examples) {
  const PrimeContext p5(5);
  EXPECT_EQ(e_p(0, p5), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(e_p(5, p5) - Complex(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(e_p(1, p5).real(), 0.309017, 1e-6);
  EXPECT_NEAR(e_p(1, p5).imag(), 0.951057, 1e-6);
}

TEST(Character, TableMatchesPolar) {
  const PrimeContext with(1009), without(1009, false);
  for (std::int64_t w = -2000; w < 2000; w += 7) ASSERT_NEAR(std::abs(e_p(w, with) - e_p(w, without)), 0.0, 1e-13);
}

TEST(GeometricSum, Examples) {
  const PrimeContext p11(11), p7(7);
  EXPECT_EQ(geometric_char_sum(0, 3, 7, p11), Complex(5.0, 0.0));
  EXPECT_NEAR(std::abs(geometric_char_sum(1, 0, 10, p11)), 0.0, 1e-12);
  const Complex direct = e_p(0, p7) + e_p(1, p7) + e_p(2, p7);
  EXPECT_NEAR(std::abs(geometric_char_sum(1, 0, 2, p7) - direct), 0.0, 1e-12);
  EXPECT_EQ(geometric_char_sum(3, 5, 4, p7), Complex(0.0, 0.0));
}

TEST(GeometricSum, MatchesTermByTermLoop) {
  const PrimeContext ctx(97);
  for (std::int64_t c = -3; c < 100; c += 5)
    for (std::int64_t lo = -40; lo < 120; lo += 13)
      for (std::int64_t hi = lo - 1; hi < lo + 250; hi += 17) {
        Complex direct(0.0, 0.0);
        for (std::int64_t x = lo; x <= hi; ++x) direct += e_p(c * x, ctx);
        ASSERT_NEAR(std::abs(geometric_char_sum(c, lo, hi, ctx) - direct), 0.0, 1e-9) << c << " " << lo << " " << hi;
      }
}

TEST(Mobius, ExamplesAndMultiplicativity) {
  EXPECT_EQ(mobius(1), 1);
  EXPECT_EQ(mobius(4), 0);
  EXPECT_EQ(mobius(6), 1);
  EXPECT_EQ(mobius(30), -1);
  EXPECT_THROW(mobius(0), DomainError);
  // sum over d | m of mu(d) is [m == 1]
  for (std::int64_t m = 1; m < 2000; ++m) {
    int s = 0;
    for (std::int64_t d = 1; d <= m; ++d)
      if (m % d == 0) s += mobius(d);
    ASSERT_EQ(s, m == 1 ? 1 : 0) << m;
  }
}

TEST(DivisorCount, ExamplesAndOracle) {
  EXPECT_EQ(divisor_count(1), 1);
  EXPECT_EQ(divisor_count(12), 6);
  EXPECT_EQ(divisor_count(101), 2);
  EXPECT_EQ(divisor_count(-12), 6);
  EXPECT_THROW(divisor_count(0), DomainError);
  for (std::int64_t m = 1; m < 3000; ++m) {
    std::int64_t c = 0;
    for (std::int64_t d = 1; d <= m; ++d) c += m % d == 0;
    ASSERT_EQ(divisor_count(m), c);
  }
}

TEST(FindSmallUV, Examples) {
  const PrimeContext ctx(101);
  EXPECT_EQ(find_small_uv(0, 5, ctx), (SmallPair{1, 0}));
  EXPECT_EQ(find_small_uv(1, 5, ctx), (SmallPair{1, 1}));
  // Minimal |v| over u <= 11 is |37*11 - 4*101| = 3.
  EXPECT_EQ(find_small_uv(37, 11, ctx), (SmallPair{11, 3}));
  EXPECT_THROW(find_small_uv(3, 0, ctx), DomainError);
}

TEST(FindSmallUV, MinimalAndWithinPigeonholeBound) {
  const PrimeContext ctx(211);
  for (std::int64_t B = 0; B < 211; ++B)
    for (std::int64_t U : {1, 2, 5, 14, 50, 210}) {
      const auto r = find_small_uv(B, U, ctx);
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (std::int64_t u = 1; u <= U; ++u) best = std::min<std::int64_t>(best, std::llabs(centered(u * B, ctx).value));
      ASSERT_EQ(std::llabs(r.v), best);
      ASSERT_EQ(centered(r.u * B, ctx).value, r.v);
      ASSERT_LE(std::llabs(r.v), (211 + U - 1) / U);
    }
}
