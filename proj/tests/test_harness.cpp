#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "modratio/harness/config.hpp"
#include "modratio/harness/fit.hpp"
#include "modratio/harness/sweep.hpp"

using namespace modratio;
using namespace modratio::harness;

TEST(Sweep, SinglePrimeMatchesBruteForce) {
  SweepConfig cfg;
  cfg.primes = {101};
  cfg.fixed_coeffs = {0, 1, 1, 1};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  const PrimeContext ctx(101);
  ProductRegion regions;
  for (int j = 0; j < 3; ++j) regions.factors.emplace_back(BoxRegion{{0, 25}, {0, 25}});
  EXPECT_EQ(rows[0].region, "cube:H=25");
  EXPECT_EQ(rows[0].count, count_bruteforce(CoefficientVector::make(0, {1, 1, 1}, ctx), regions, ctx));
  EXPECT_GT(rows[0].envelope, 0.0);
  EXPECT_GE(rows[0].ratio, 0.0);
  EXPECT_LE(rows[0].ratio, 1.0);
}

TEST(Sweep, EmptyPrimeListWritesHeaderOnly) {
  SweepConfig cfg;
  std::ostringstream out;
  write_csv(out, run_sweep(cfg));
  EXPECT_EQ(out.str(), std::string(kSweepHeader) + "\n");
}

TEST(Sweep, FlagsBelowNontrivialRange) {
  SweepConfig cfg;
  cfg.primes = {101, 211};
  cfg.theta = 0.3;  // 0.3 < 3/7
  for (const auto& row : run_sweep(cfg)) EXPECT_NE(row.flags.find("below_nontrivial_range=true"), std::string::npos);
  cfg.theta = 0.7;
  for (const auto& row : run_sweep(cfg)) EXPECT_EQ(row.flags.find("below_nontrivial_range"), std::string::npos);
}

TEST(Sweep, CsvRoundTripIsExact) {
  SweepConfig cfg;
  cfg.primes = {101, 307, 503};
  cfg.coeff_policy = "random";
  cfg.seed = 17;
  const auto rows = run_sweep(cfg);
  std::stringstream buf;
  write_csv(buf, rows);
  EXPECT_EQ(read_csv(buf), rows);
  std::istringstream bad("p,n\n");
  EXPECT_THROW(read_csv(bad), DomainError);
}

TEST(Sweep, DeterministicAcrossRunsAndWorkerCounts) {
  SweepConfig cfg;
  cfg.primes = {101, 211, 307, 401};
  cfg.coeff_policy = "random";
  cfg.seed = 3;
  cfg.workers = 1;
  std::ostringstream a, b, c;
  write_csv(a, run_sweep(cfg));
  write_csv(b, run_sweep(cfg));
  cfg.workers = 4;
  write_csv(c, run_sweep(cfg));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), c.str());
  EXPECT_NE(a.str().find("seed=3"), std::string::npos);
}

TEST(Sweep, ValidatesConfig) {
  SweepConfig cfg;
  cfg.theta = 1.0;
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = {};
  cfg.primes = {91};
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = {};
  cfg.eps = -0.1;
  EXPECT_THROW(run_sweep(cfg), DomainError);
  cfg = {};
  cfg.fixed_coeffs = {0, 1};
  EXPECT_THROW(run_sweep(cfg), DomainError);
}

TEST(Sweep, PrimeRangeGrid) {
  SweepConfig cfg;
  cfg.prime_min = 100;
  cfg.prime_max = 1000;
  cfg.prime_count = 4;
  const auto g = cfg.grid();
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.front(), 101);
  for (auto q : g) EXPECT_TRUE(is_prime(static_cast<std::uint64_t>(q)));
}

TEST(Fit, ExactPowerLaw) {
  std::vector<SweepRow> rows;
  for (std::int64_t p : {101, 211, 401, 809, 1601}) {
    SweepRow r;
    r.p = p;
    r.abs_error = std::pow(static_cast<double>(p), 1.5);
    r.ratio = 0.25;
    rows.push_back(r);
  }
  const auto fit = fit_exponent(rows);
  EXPECT_NEAR(fit.slope, 1.5, 1e-9);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-8);
  EXPECT_EQ(fit.max_ratio, 0.25);
}

TEST(Fit, AllZeroErrorsIsUndefined) {
  std::vector<SweepRow> rows(4);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].p = 101 + 100 * static_cast<std::int64_t>(i);
  const auto fit = fit_exponent(rows);
  EXPECT_FALSE(fit.defined());
  EXPECT_EQ(fit.max_ratio, 0.0);
}

TEST(Config, ParsesAndAppliesSettings) {
  std::istringstream in("# sweep\nprimes = 101, 211\nn=3\ntheta=0.65  # inline\ncoeffs=0,1,2,3\nseed=9\n\n");
  SweepConfig cfg;
  apply_settings(cfg, read_settings(in));
  EXPECT_EQ(cfg.primes, (std::vector<std::int64_t>{101, 211}));
  EXPECT_DOUBLE_EQ(cfg.theta, 0.65);
  EXPECT_EQ(cfg.coeff_policy, "fixed");
  EXPECT_EQ(cfg.fixed_coeffs, (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_EQ(cfg.seed, 9u);
  apply_setting(cfg, "coeffs", "random");
  EXPECT_EQ(cfg.coeff_policy, "random");
  EXPECT_THROW(apply_setting(cfg, "colour", "blue"), DomainError);
  EXPECT_THROW(apply_setting(cfg, "theta", "high"), DomainError);
  std::istringstream bad("no equals sign\n");
  EXPECT_THROW(read_settings(bad), DomainError);
}
