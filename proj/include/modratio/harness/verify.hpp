#pragma once

// The verification suite: exact identities, oracle equivalences and
// monitored envelopes, one check per acceptance criterion. Used by the
// `verify` subcommand and by the acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modratio/counting.hpp"
#include "modratio/expsums.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/geometry.hpp"
#include "modratio/harness/fit.hpp"
#include "modratio/harness/sweep.hpp"
#include "modratio/wellshaped.hpp"

namespace modratio::harness {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;  // fewer instances and smaller primes
  std::uint64_t seed = 20240611;
  unsigned workers = default_workers();
};

// Pinned thresholds.
struct Tolerances {
  static constexpr double kParsevalRelative = 1e-8;
  static constexpr double kCompleteSumPerP = 1e-9;
  static constexpr double kLemma1Eps = 0.15;
  static constexpr double kLemma1SlopeTarget = 0.75;
  static constexpr double kLemma2Eps = 0.2;
  static constexpr double kLemma3Eps = 0.15;
  static constexpr double kCorollary1Eps = 0.2;
  static constexpr double kCorollary1Slope = 2.25;
  static constexpr double kTheorem2Eps = 0.25;
  static constexpr double kSlopeSlack = 0.15;
};

namespace verify_detail {

inline std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = lo; q <= hi; ++q)
    if (is_prime(static_cast<std::uint64_t>(q))) out.push_back(q);
  return out;
}

inline std::int64_t next_prime(std::int64_t q) {
  while (!is_prime(static_cast<std::uint64_t>(q))) ++q;
  return q;
}

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Random sub-interval of [0, p-1] of length in [min_len, max_len].
inline Interval random_interval(std::mt19937_64& rng, std::int64_t p, std::int64_t min_len, std::int64_t max_len) {
  max_len = std::min(max_len, p);
  const std::int64_t len = uniform(rng, std::min(min_len, max_len), max_len);
  const std::int64_t start = uniform(rng, 0, p - len);
  return {start - 1, len};
}

inline std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

template <class Fn>
CheckResult timed(int id, std::string name, Fn&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// gcd-filtered enumeration of every tuple; independent of the Moebius path.
inline std::int64_t coprime_bruteforce(const CoefficientVector& coeffs, const ProductRegion& regions,
                                       const PrimeContext& ctx) {
  std::vector<std::vector<std::int64_t>> terms(coeffs.n());
  for (std::size_t j = 0; j < coeffs.n(); ++j) {
    for_each_row(regions.factors[j], [&](std::int64_t y, const Interval& row) {
      if (ctx.reduce(y) == 0) return;
      for (std::int64_t x = row.lo(); x <= row.hi(); ++x)
        if (std::gcd(x, y) == 1)
          terms[j].push_back(ctx.mul(coeffs.a[j], ctx.mul(x, mod_inverse(y, ctx))));
    });
  }
  // Distribution of partial sums, one factor at a time.
  std::vector<std::int64_t> dist(static_cast<std::size_t>(ctx.p()), 0);
  dist[0] = 1;
  for (const auto& t : terms) {
    std::vector<std::int64_t> next(dist.size(), 0);
    for (std::size_t s = 0; s < dist.size(); ++s) {
      if (dist[s] == 0) continue;
      for (auto v : t) next[static_cast<std::size_t>(ctx.add(static_cast<std::int64_t>(s), v))] += dist[s];
    }
    dist = std::move(next);
  }
  return dist[static_cast<std::size_t>(coeffs.a0)];
}

}  // namespace verify_detail

// 1. count_fast == count_bruteforce on seeded random instances.
inline CheckResult check_oracle_equivalence(const VerifyOptions& opt) {
  return verify_detail::timed(1, "oracle equivalence: count_fast == count_bruteforce", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 1);
    const auto primes = verify_detail::primes_between(11, 97);
    const int instances = opt.quick ? 60 : 240;
    int mismatches = 0;
    std::int64_t checked = 0;
    for (int t = 0; t < instances; ++t) {
      const std::int64_t p = primes[static_cast<std::size_t>(verify_detail::uniform(rng, 0, std::ssize(primes) - 1))];
      const PrimeContext ctx(p);
      const int n = static_cast<int>(verify_detail::uniform(rng, 1, 3));
      // Keep the brute-force enumeration near 10^7 tuples.
      const auto max_len = static_cast<std::int64_t>(std::pow(1e7, 1.0 / (2.0 * n)));
      ProductRegion regions;
      std::vector<std::int64_t> a;
      for (int j = 0; j < n; ++j) {
        regions.factors.emplace_back(BoxRegion{verify_detail::random_interval(rng, p, 0, max_len),
                                               verify_detail::random_interval(rng, p, 0, max_len)});
        a.push_back(verify_detail::uniform(rng, 1, p - 1));
      }
      const auto coeffs = CoefficientVector::make(verify_detail::uniform(rng, 0, p - 1), a, ctx);
      const auto fast = count_fast(coeffs, regions, ctx, opt.workers);
      const auto brute = count_bruteforce(coeffs, regions, ctx);
      if (fast.count != brute) ++mismatches;
      ++checked;
    }
    r.passed = mismatches == 0 && checked >= (opt.quick ? 60 : 200);
    r.detail = std::to_string(checked) + " instances, " + std::to_string(mismatches) + " mismatches";
  });
}

// 2. sum_{a != 0} |S(a)|^2 = p T - (K L')^2.
inline CheckResult check_parseval(const VerifyOptions& opt) {
  return verify_detail::timed(2, "Parseval identity for the second moment over a", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 2);
    const auto primes = verify_detail::primes_between(3, 499);
    const int instances = opt.quick ? 15 : 50;
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
      const std::int64_t p = primes[static_cast<std::size_t>(verify_detail::uniform(rng, 0, std::ssize(primes) - 1))];
      const PrimeContext ctx(p);
      const Interval I = verify_detail::random_interval(rng, p, 1, p);
      const Interval J = verify_detail::random_interval(rng, p, 1, p);
      const double moment = second_moment_over_a(I, J, ctx, opt.workers);
      const double T = static_cast<double>(cross_ratio_count(I, J, I, J, ctx));
      const double KL = static_cast<double>(lattice_count_nonzero_y(BoxRegion{I, J}, ctx));
      const double rhs = static_cast<double>(p) * T - KL * KL;
      const double rel = std::abs(moment - rhs) / std::max(1.0, static_cast<double>(p) * T);
      worst = std::max(worst, rel);
    }
    r.passed = worst <= Tolerances::kParsevalRelative;
    r.detail = std::to_string(instances) + " instances, max relative deviation " + verify_detail::fmt(worst, 3);
  });
}

// 3. Complete Kloosterman sums are -1; ratio sums over a full x-period vanish.
inline CheckResult check_complete_sums(const VerifyOptions& opt) {
  return verify_detail::timed(3, "complete-sum identities", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 3);
    const auto pool = verify_detail::primes_between(3, 5000);
    double worst_k = 0.0, worst_s = 0.0;
    for (int t = 0; t < 20; ++t) {
      const std::int64_t p = pool[static_cast<std::size_t>(verify_detail::uniform(rng, 0, std::ssize(pool) - 1))];
      const PrimeContext ctx(p);
      const auto lambda = verify_detail::uniform(rng, 1, p - 1);
      const auto k = kloosterman_interval(lambda, Interval::closed(1, p - 1), ctx);
      worst_k = std::max(worst_k, std::abs(k.value - Complex(-1.0, 0.0)) / static_cast<double>(p));
      const Interval J = verify_detail::random_interval(rng, p, 1, p);
      const auto s = ratio_double_sum(verify_detail::uniform(rng, 1, p - 1), Interval::closed(0, p - 1), J, ctx);
      worst_s = std::max(worst_s, std::abs(s.value) / std::max<double>(1.0, static_cast<double>(s.terms)));
    }
    r.passed = worst_k <= Tolerances::kCompleteSumPerP && worst_s <= Tolerances::kCompleteSumPerP;
    r.detail = "20 primes; max |K+1|/p = " + verify_detail::fmt(worst_k, 3) +
               ", max |S|/terms (full x-period) = " + verify_detail::fmt(worst_s, 3);
  });
}

// 4. Cross-ratio count against K^2 L^2 / p.
inline CheckResult check_lemma1(const VerifyOptions& opt) {
  return verify_detail::timed(4, "cross-ratio count main term", [&](CheckResult& r) {
    const std::vector<std::int64_t> primes =
        opt.quick ? std::vector<std::int64_t>{1009, 2003, 4001} : std::vector<std::int64_t>{1009, 2003, 4001, 8009};
    std::vector<double> ps, errs;
    bool envelope_ok = true;
    double worst_ratio = 0.0;
    for (auto p : primes) {
      const PrimeContext ctx(p);
      const auto K = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(p), 0.75)));
      const Interval I{0, K}, J{0, K};
      const auto count = cross_ratio_count(I, J, I, J, ctx);
      const double dev = std::abs(cross_ratio_deviation(count, I, J, I, J, ctx));
      const double KL = static_cast<double>(K) * static_cast<double>(K);
      const double envelope = KL * std::pow(static_cast<double>(p), Tolerances::kLemma1Eps);
      worst_ratio = std::max(worst_ratio, dev / envelope);
      envelope_ok = envelope_ok && dev <= envelope;
      ps.push_back(static_cast<double>(p));
      errs.push_back(dev);
    }
    const auto fit = fit_loglog(ps, errs);
    const double slope_limit = Tolerances::kLemma1SlopeTarget + Tolerances::kSlopeSlack;
    const bool slope_ok = fit.defined() && fit.slope <= slope_limit;
    r.passed = envelope_ok && slope_ok;
    r.detail = "max |dev|/envelope = " + verify_detail::fmt(worst_ratio, 4) + (envelope_ok ? " (ok)" : " (FAIL)") +
               "; fitted error slope " + verify_detail::fmt(fit.slope, 4) + " vs limit " +
               verify_detail::fmt(slope_limit, 3) + (slope_ok ? " (ok)" : " (FAIL)") +
               "; envelope KL has slope 1.5";
  });
}

// 5. Inverse concentration bound.
inline CheckResult check_lemma2(const VerifyOptions& opt) {
  return verify_detail::timed(5, "inverse concentration envelope", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 5);
    const std::vector<std::int64_t> primes = opt.quick ? std::vector<std::int64_t>{1009, 4001, 10007}
                                                       : std::vector<std::int64_t>{1009, 2003, 4001, 6007, 8009, 10007};
    double worst = 0.0;
    int instances = 0;
    for (auto p : primes) {
      const PrimeContext ctx(p);
      const auto pd = static_cast<double>(p);
      // Structured grid of lengths plus random triples.
      std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> grid;
      for (double lexp : {0.25, 0.5, 0.75, 0.9})
        for (double mexp : {0.25, 0.5, 0.75, 0.9}) {
          const auto L = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::pow(pd, lexp)));
          const auto M = static_cast<std::int64_t>(std::pow(pd, mexp));
          grid.emplace_back(verify_detail::uniform(rng, 0, p - 1 - L - 1), L, M);
        }
      for (int t = 0; t < (opt.quick ? 10 : 40); ++t) {
        const auto B = verify_detail::uniform(rng, 0, p - 3);
        const auto L = verify_detail::uniform(rng, 1, p - 1 - B - 1 > 0 ? p - 1 - B - 1 : 1);
        grid.emplace_back(B, std::min(L, p - 2 - B), verify_detail::uniform(rng, 0, p - 1));
      }
      for (const auto& [B, L, M] : grid) {
        if (L < 1 || B + L >= p) continue;
        const auto count = inverse_concentration_count(B, L, M, ctx);
        const double bound = (std::sqrt(static_cast<double>(L) / pd) * static_cast<double>(M) + 1.0) *
                             std::pow(pd, Tolerances::kLemma2Eps);
        worst = std::max(worst, static_cast<double>(count) / bound);
        ++instances;
      }
    }
    r.passed = worst <= 1.0;
    r.detail = std::to_string(instances) + " (B,L,M) triples, max count/envelope = " + verify_detail::fmt(worst, 4);
  });
}

// 6. Double ratio sums over boxes, maximised over random a.
inline CheckResult check_lemma3(const VerifyOptions& opt) {
  return verify_detail::timed(6, "ratio double sum envelope", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 6);
    std::vector<std::int64_t> primes;
    for (std::int64_t q : {101, 211, 401, 809, 1601, 3203, 4999}) primes.push_back(verify_detail::next_prime(q));
    if (opt.quick) primes = {101, 401, 1601};
    std::vector<double> ps, maxima, envelopes;
    double worst = 0.0;
    for (auto p : primes) {
      const PrimeContext ctx(p);
      const auto pd = static_cast<double>(p);
      const auto K = static_cast<std::int64_t>(std::floor(std::pow(pd, 0.6)));
      const Interval I = verify_detail::random_interval(rng, p, K, K);
      const Interval J{verify_detail::uniform(rng, 0, p - 1 - K) , K};  // J inside [1, p-1]
      double best = 0.0;
      for (int t = 0; t < (opt.quick ? 50 : 200); ++t)
        best = std::max(best, std::abs(ratio_double_sum(verify_detail::uniform(rng, 1, p - 1), I, J, ctx).value));
      const double shape = static_cast<double>(K) + std::sqrt(pd * static_cast<double>(K));
      worst = std::max(worst, best / (shape * std::pow(pd, Tolerances::kLemma3Eps)));
      ps.push_back(pd);
      maxima.push_back(best);
      envelopes.push_back(shape);
    }
    const auto fit = fit_loglog(ps, maxima);
    const auto env_fit = fit_loglog(ps, envelopes);
    const bool slope_ok = fit.defined() && fit.slope <= env_fit.slope + Tolerances::kSlopeSlack;
    r.passed = worst <= 1.0 && slope_ok;
    r.detail = "max |S|/envelope = " + verify_detail::fmt(worst, 4) + "; fitted slope " +
               verify_detail::fmt(fit.slope, 4) + " vs envelope slope " + verify_detail::fmt(env_fit.slope, 4);
  });
}

inline SweepConfig corollary1_config(bool quick, unsigned workers) {
  SweepConfig cfg;
  cfg.primes = quick ? std::vector<std::int64_t>{101, 307, 601, 1009}
                     : std::vector<std::int64_t>{101, 211, 307, 401, 503, 601, 701, 809, 907, 1009};
  cfg.n = 3;
  cfg.theta = 0.7;
  cfg.eps = Tolerances::kCorollary1Eps;
  cfg.coeff_policy = "fixed";
  cfg.fixed_coeffs = {0, 1, 1, 1};
  cfg.workers = workers;
  return cfg;
}

// 7. Cubic-box sweep at theta = 0.7.
inline CheckResult check_corollary1(const VerifyOptions& opt) {
  return verify_detail::timed(7, "cubic-box count envelope (n=3, theta=0.7)", [&](CheckResult& r) {
    const auto cfg = corollary1_config(opt.quick, opt.workers);
    const auto rows = run_sweep(cfg);
    const auto fit = fit_exponent(rows);
    bool errors = false;
    for (const auto& row : rows) errors = errors || row.flags.find("error") != std::string::npos;
    // Spot-check the smallest grid point against the brute-force counter.
    const PrimeContext ctx(rows.front().p);
    const auto H = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(ctx.p()), 0.7) + 1e-9));
    ProductRegion regions;
    for (int j = 0; j < 3; ++j) regions.factors.emplace_back(BoxRegion{{0, H}, {0, H}});
    const auto brute = count_bruteforce(CoefficientVector::make(0, {1, 1, 1}, ctx), regions, ctx);
    const bool spot_ok = brute == rows.front().count;
    const double slope_limit = Tolerances::kCorollary1Slope + Tolerances::kSlopeSlack;
    const bool slope_ok = fit.defined() && fit.slope <= slope_limit;
    r.passed = !errors && fit.max_ratio <= 1.0 && slope_ok && spot_ok;
    r.detail = std::to_string(rows.size()) + " primes; max error/envelope = " + verify_detail::fmt(fit.max_ratio, 4) +
               "; fitted slope " + verify_detail::fmt(fit.slope, 4) + " vs limit " +
               verify_detail::fmt(slope_limit, 3) + "; p=" + std::to_string(ctx.p()) + " brute-force " +
               (spot_ok ? "agrees" : "DISAGREES");
  });
}

// 8. Cube counts and layer structure.
inline CheckResult check_dyadic(const VerifyOptions& opt) {
  return verify_detail::timed(8, "dyadic cube machinery", [&](CheckResult& r) {
    const int d = 6;
    const auto cube = WellShapedSet::unit_cube(d);
    const int kmax = opt.quick ? 10 : 16;
    bool counts_ok = true;
    for (int k = 2; k <= kmax; ++k) {
      const auto shift = make_shift(d, 1009, 5);
      const auto expected = static_cast<std::int64_t>(std::pow(k - 1, d));
      counts_ok = counts_ok && count_cubes_inside(cube, k, shift) == expected;
    }
    const auto cube_layers = audit_dyadic_layers(cube, 2, make_shift(d, 1009, 2));
    const bool b2_ok = cube_layers.layer_sizes.size() == 2 && cube_layers.layer_sizes[0] == 1 &&
                       cube_layers.layer_sizes[1] == 665 && cube_layers.ok();
    const auto ball = WellShapedSet::ball(d, 0.4);
    bool audit_ok = true;
    std::string sizes;
    const int max_depth = opt.quick ? 4 : 5;
    for (int M = 1; M <= max_depth; ++M) {
      const auto audit = audit_dyadic_layers(ball, M, make_shift(d, 1009, M));
      const double slack = ball.boundary_constant * std::sqrt(static_cast<double>(d)) * std::ldexp(1.0, -M);
      audit_ok = audit_ok && audit.ok() && audit.covered_measure <= ball.measure &&
                 ball.measure - audit.covered_measure <= slack;
      if (M == max_depth) {
        for (auto s : audit.layer_sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
      }
    }
    r.passed = counts_ok && b2_ok && audit_ok;
    r.detail = std::string("unit-cube counts (k<=") + std::to_string(kmax) + ") " + (counts_ok ? "exact" : "WRONG") +
               "; #B1,#B2 = " + std::to_string(cube_layers.layer_sizes[0]) + "," +
               std::to_string(cube_layers.layer_sizes[1]) + "; ball layers at M=" + std::to_string(max_depth) + ": " +
               sizes + (audit_ok ? " (audit ok)" : " (audit FAIL)");
  });
}

// 9. Lower-bound sandwich and main term for the 6-ball.
inline CheckResult check_theorem2(const VerifyOptions& opt) {
  return verify_detail::timed(9, "blow-up count sandwich (6-ball r=0.4)", [&](CheckResult& r) {
    const auto ball = WellShapedSet::ball(6, 0.4);
    const std::vector<std::int64_t> primes =
        opt.quick ? std::vector<std::int64_t>{31, 41} : std::vector<std::int64_t>{31, 37, 41, 53, 61};
    bool ok = true;
    std::string detail;
    for (auto p : primes) {
      const PrimeContext ctx(p);
      const auto coeffs = CoefficientVector::make(0, {1, 1, 1}, ctx);
      const auto lower = count_in_blowup(coeffs, ball, ctx, -1, 0x5eed, opt.workers);
      const auto exact = exact_blowup_count(coeffs, ball, ctx, opt.workers);
      const auto pd = static_cast<double>(p);
      const double main = std::pow(pd, 5) * std::pow(std::numbers::pi, 3) * std::pow(0.4, 6) / 6.0;
      const double scaled = std::abs(static_cast<double>(exact) - main) / std::pow(pd, 6.0 - 11.0 / 7.0);
      const double gap = static_cast<double>(exact - lower.layer_sum);
      const bool row_ok = lower.layer_sum <= exact && gap <= lower.gap_bound &&
                          scaled <= std::pow(pd, Tolerances::kTheorem2Eps);
      ok = ok && row_ok;
      detail += (detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + " M=" +
                std::to_string(lower.M) + " layer=" + std::to_string(lower.layer_sum) + " exact=" +
                std::to_string(exact) + " gap/bound=" + verify_detail::fmt(gap / lower.gap_bound, 3) +
                " scaled=" + verify_detail::fmt(scaled, 3);
    }
    r.passed = ok;
    r.detail = detail;
  });
}

// 10. Moebius-inverted coprime count against gcd-filtered enumeration.
inline CheckResult check_coprime(const VerifyOptions& opt) {
  return verify_detail::timed(10, "coprime count vs gcd-filtered brute force", [&](CheckResult& r) {
    std::mt19937_64 rng(opt.seed + 10);
    const auto primes = verify_detail::primes_between(5, 97);
    const int instances = opt.quick ? 20 : 50;
    int mismatches = 0;
    for (int t = 0; t < instances; ++t) {
      const std::int64_t p = primes[static_cast<std::size_t>(verify_detail::uniform(rng, 0, std::ssize(primes) - 1))];
      const PrimeContext ctx(p);
      const int n = static_cast<int>(verify_detail::uniform(rng, 1, 3));
      const auto max_len = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::pow(1e6, 1.0 / (2.0 * n))));
      ProductRegion regions;
      std::vector<std::int64_t> a;
      for (int j = 0; j < n; ++j) {
        regions.factors.emplace_back(BoxRegion{verify_detail::random_interval(rng, p, 1, max_len),
                                               verify_detail::random_interval(rng, p, 1, max_len)});
        a.push_back(verify_detail::uniform(rng, 1, p - 1));
      }
      const auto coeffs = CoefficientVector::make(verify_detail::uniform(rng, 0, p - 1), a, ctx);
      if (coprime_count(coeffs, regions, ctx, opt.workers).count !=
          verify_detail::coprime_bruteforce(coeffs, regions, ctx))
        ++mismatches;
    }
    r.passed = mismatches == 0;
    r.detail = std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches";
  });
}

// 11. Identical configs give identical CSV bytes.
inline CheckResult check_determinism(const VerifyOptions& opt) {
  return verify_detail::timed(11, "sweep determinism", [&](CheckResult& r) {
    auto cfg = corollary1_config(true, std::max(2u, opt.workers));
    cfg.coeff_policy = "random";
    cfg.fixed_coeffs.clear();
    cfg.seed = opt.seed;
    std::ostringstream a, b;
    write_csv(a, run_sweep(cfg));
    write_csv(b, run_sweep(cfg));
    r.passed = a.str() == b.str() && !a.str().empty();
    r.detail = std::to_string(a.str().size()) + " bytes per run, " + (r.passed ? "identical" : "DIFFERENT");
  });
}

inline std::vector<std::function<CheckResult(const VerifyOptions&)>> all_checks() {
  return {check_oracle_equivalence, check_parseval, check_complete_sums, check_lemma1,
          check_lemma2,             check_lemma3,   check_corollary1,    check_dyadic,
          check_theorem2,           check_coprime,  check_determinism};
}

inline std::string format_check(const CheckResult& r) {
  std::ostringstream s;
  s << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " -- " << r.detail << " ("
    << verify_detail::fmt(r.seconds, 3) << " s)";
  return s.str();
}

}  // namespace modratio::harness
