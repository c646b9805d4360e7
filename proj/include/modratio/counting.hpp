#pragma once

// Solution counts for the congruence
//
//     a_1 x_1 / y_1 + ... + a_n x_n / y_n = a_0   (mod p)
//
// with each (x_j, y_j) drawn from a planar region. The fast counter expands
// the indicator by orthogonality of additive characters,
//
//     N = (1/p) sum_lambda e_p(-lambda a_0) prod_j S_j(lambda a_j),
//
// where S_j is the ratio double sum over region j, and rounds the result.
// The brute-force counter solves for x_1 directly and serves as its oracle.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "modratio/errors.hpp"
#include "modratio/expsums.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/geometry.hpp"
#include "modratio/parallel.hpp"

namespace modratio {

struct CoefficientVector {
  std::int64_t a0 = 0;
  std::vector<std::int64_t> a;  // a_1 .. a_n, all nonzero mod p

  std::size_t n() const { return a.size(); }

  static CoefficientVector make(std::int64_t a0, std::vector<std::int64_t> a, const PrimeContext& ctx) {
    CoefficientVector out{ctx.reduce(a0), std::move(a)};
    out.validate(ctx);
    return out;
  }

  // "a0,a1,...,an"
  static CoefficientVector parse(const std::string& text, const PrimeContext& ctx) {
    const auto fields = detail::split(text, ',');
    if (fields.size() < 2) throw DomainError("coefficients need a0 and at least one a_j");
    std::vector<std::int64_t> a;
    for (std::size_t i = 1; i < fields.size(); ++i) a.push_back(detail::parse_int(fields[i], text));
    return make(detail::parse_int(fields[0], text), std::move(a), ctx);
  }

  void validate(const PrimeContext& ctx) {
    if (a.empty()) throw DomainError("coefficient vector needs n >= 1");
    for (auto& v : a) {
      v = ctx.reduce(v);
      if (v == 0) throw DomainError("coefficients a_1..a_n must be nonzero mod p");
    }
    a0 = ctx.reduce(a0);
  }

  std::string to_string() const {
    std::string s = std::to_string(a0);
    for (auto v : a) s += "," + std::to_string(v);
    return s;
  }
};

struct CountResult {
  std::int64_t count = 0;
  double main_term = 0.0;
  double residual = 0.0;  // distance of the character average from `count`
  std::int64_t skipped_rows = 0;
};

inline constexpr double kRoundingThreshold = 0.4;
inline constexpr std::int64_t kBruteforceBudget = 1'000'000'000;
inline constexpr double kFastBudget = 4.0e10;

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integers in [lo, hi] congruent to t mod p.
inline std::int64_t count_congruent(std::int64_t lo, std::int64_t hi, std::int64_t t, std::int64_t p) {
  if (lo > hi) return 0;
  return floor_div(hi - t, p) - floor_div(lo - 1 - t, p);
}

struct PointList {
  std::vector<std::int64_t> ratio;  // x * y^{-1} mod p per point, y != 0
};

inline PointList ratio_points(const Region& region, const PrimeContext& ctx) {
  PointList out;
  for_each_row(region, [&](std::int64_t y, const Interval& row) {
    const std::int64_t yr = ctx.reduce(y);
    if (yr == 0) return;
    const std::int64_t inv = ctx.inverse_unchecked(yr);
    std::int64_t t = ctx.mul(row.lo(), inv);
    for (std::int64_t x = row.lo(); x <= row.hi(); ++x) {
      out.ratio.push_back(t);
      t += inv;
      if (t >= ctx.p()) t -= ctx.p();
    }
  });
  return out;
}

inline void check_inputs(const CoefficientVector& coeffs, const ProductRegion& regions, const PrimeContext& ctx) {
  check_region(regions, ctx);
  if (coeffs.n() != regions.arity())
    throw DomainError("coefficient count " + std::to_string(coeffs.n()) + " does not match " +
                      std::to_string(regions.arity()) + " regions");
  for (auto v : coeffs.a)
    if (ctx.reduce(v) == 0) throw DomainError("coefficients a_1..a_n must be nonzero mod p");
}

inline std::int64_t total_skipped(const ProductRegion& regions, const PrimeContext& ctx) {
  std::int64_t s = 0;
  for (const auto& f : regions.factors) s += skipped_rows(f, ctx);
  return s;
}

}  // namespace detail

enum class BruteforceMode {
  SolveFirst,     // solve for x_1 row by row
  FullEnumerate,  // test every tuple; slowest, used to cross-check SolveFirst
};

inline std::int64_t count_bruteforce(const CoefficientVector& coeffs, const ProductRegion& regions,
                                     const PrimeContext& ctx, BruteforceMode mode = BruteforceMode::SolveFirst) {
  detail::check_inputs(coeffs, regions, ctx);
  {
    double size = 1.0;
    for (const auto& f : regions.factors) size *= static_cast<double>(lattice_count(f));
    if (size > static_cast<double>(kBruteforceBudget))
      throw SizeError("brute-force enumeration of " + std::to_string(size) + " tuples exceeds budget");
  }
  const std::int64_t p = ctx.p();
  const std::size_t n = coeffs.n();

  // Residues a_j x_j / y_j for every admissible point of factors 2..n.
  std::vector<std::vector<std::int64_t>> terms(n);
  for (std::size_t j = (mode == BruteforceMode::SolveFirst ? 1 : 0); j < n; ++j) {
    const auto pts = detail::ratio_points(regions.factors[j], ctx);
    terms[j].reserve(pts.ratio.size());
    for (auto t : pts.ratio) terms[j].push_back(ctx.mul(coeffs.a[j], t));
  }

  // First factor rows for the solve step: x_1 = (a0 - s) * y_1 / a_1.
  struct Row {
    std::int64_t y_over_a1;
    std::int64_t lo, hi;
  };
  std::vector<Row> rows;
  if (mode == BruteforceMode::SolveFirst) {
    const std::int64_t inv_a1 = ctx.inverse_unchecked(coeffs.a[0]);
    for_each_row(regions.factors[0], [&](std::int64_t y, const Interval& row) {
      const std::int64_t yr = ctx.reduce(y);
      if (yr != 0) rows.push_back({ctx.mul(yr, inv_a1), row.lo(), row.hi()});
    });
  }

  std::int64_t total = 0;
  const std::size_t first = (mode == BruteforceMode::SolveFirst) ? 1 : 0;
  // Iterative odometer over the point lists of factors first..n-1.
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t j = first; j < n; ++j)
    if (terms[j].empty()) return 0;
  for (;;) {
    std::int64_t s = 0;
    for (std::size_t j = first; j < n; ++j) {
      s += terms[j][idx[j]];
      if (s >= p) s -= p;
    }
    if (mode == BruteforceMode::SolveFirst) {
      const std::int64_t rhs = ctx.sub(coeffs.a0, s);
      for (const auto& r : rows) total += detail::count_congruent(r.lo, r.hi, ctx.mul(rhs, r.y_over_a1), p);
    } else if (s == coeffs.a0) {
      ++total;
    }
    std::size_t j = n;
    while (j > first) {
      --j;
      if (++idx[j] < terms[j].size()) break;
      idx[j] = 0;
      if (j == first) return total;
    }
    if (n == first) return total;
  }
}

// Character-sum evaluation over precomputed factor tables. tables[j] must be
// the table for coefficient a_{j+1}.
inline CountResult count_from_tables(const CoefficientVector& coeffs, const std::vector<const FactorSumTable*>& tables,
                                     const PrimeContext& ctx, unsigned workers = default_workers()) {
  const std::int64_t p = ctx.p();
  double main = 1.0;
  for (const auto* t : tables) main *= static_cast<double>(t->points());
  main /= static_cast<double>(p);

  const Complex total = chunked_reduce(
      0, p, 2048, workers,
      [&](std::int64_t lo, std::int64_t hi) {
        ComplexAccumulator acc;
        std::int64_t phase = ctx.mul(lo, p - coeffs.a0);
        const std::int64_t phase_step = ctx.reduce(-coeffs.a0);
        std::vector<std::int64_t> arg(coeffs.n());
        for (std::size_t j = 0; j < coeffs.n(); ++j) arg[j] = ctx.mul(lo, coeffs.a[j]);
        for (std::int64_t lambda = lo; lambda < hi; ++lambda) {
          Complex term = ctx.root_unchecked(phase);
          for (std::size_t j = 0; j < coeffs.n(); ++j) {
            term *= (*tables[j])[arg[j]];
            arg[j] += coeffs.a[j];
            if (arg[j] >= p) arg[j] -= p;
          }
          acc.add(term);
          phase += phase_step;
          if (phase >= p) phase -= p;
        }
        return acc.value();
      },
      [](Complex x, Complex y) { return x + y; }, Complex(0.0, 0.0));

  const Complex average = total / static_cast<double>(p);
  const double rounded = std::round(average.real());
  CountResult out;
  out.main_term = main;
  out.residual = std::hypot(average.real() - rounded, average.imag());
  if (!(out.residual < kRoundingThreshold) || rounded < 0.0)
    throw PrecisionError("character average " + std::to_string(average.real()) + "+" +
                         std::to_string(average.imag()) + "i is not near a nonnegative integer");
  out.count = static_cast<std::int64_t>(rounded);
  return out;
}

inline CountResult count_fast(const CoefficientVector& coeffs, const ProductRegion& regions, const PrimeContext& ctx,
                              unsigned workers = default_workers()) {
  detail::check_inputs(coeffs, regions, ctx);
  double work = 0.0;
  for (const auto& f : regions.factors) work += static_cast<double>(y_extent(f).size());
  if (work * static_cast<double>(ctx.p()) > kFastBudget)
    throw SizeError("fast counter work p * sum(L_j) exceeds budget");

  // Factors with identical regions share one table.
  std::vector<FactorSumTable> owned;
  owned.reserve(regions.arity());
  std::vector<std::size_t> which(regions.arity());
  for (std::size_t j = 0; j < regions.arity(); ++j) {
    const std::string key = describe(regions.factors[j]);
    bool reused = false;
    for (std::size_t k = 0; k < j; ++k) {
      if (regions.factors[k].index() == regions.factors[j].index() && describe(regions.factors[k]) == key &&
          !std::holds_alternative<ConvexRegion>(regions.factors[j])) {
        which[j] = which[k];
        reused = true;
        break;
      }
    }
    if (!reused) {
      which[j] = owned.size();
      owned.emplace_back(regions.factors[j], ctx, workers);
    }
  }
  std::vector<const FactorSumTable*> tables;
  for (std::size_t j = 0; j < regions.arity(); ++j) tables.push_back(&owned[which[j]]);
  CountResult out = count_from_tables(coeffs, tables, ctx, workers);
  out.skipped_rows = detail::total_skipped(regions, ctx);
  return out;
}

// d[t] = #{(x, y) in I x J : y != 0, x = t y (mod p)}.
struct RatioDistribution {
  std::vector<std::int64_t> d;
  BoxRegion region;

  std::int64_t total() const { return std::accumulate(d.begin(), d.end(), std::int64_t{0}); }
};

inline RatioDistribution ratio_distribution(const Interval& I, const Interval& J, const PrimeContext& ctx) {
  RatioDistribution out{std::vector<std::int64_t>(static_cast<std::size_t>(ctx.p()), 0), BoxRegion{I, J}};
  check_region(Region{out.region}, ctx);
  const auto pts = detail::ratio_points(out.region, ctx);
  for (auto t : pts.ratio) ++out.d[static_cast<std::size_t>(t)];
  return out;
}

// Solutions of x1 y2 = x2 y1 (mod p) with x_i in I_i, y_i in J_i, y_i != 0.
inline std::int64_t cross_ratio_count(const Interval& I1, const Interval& J1, const Interval& I2, const Interval& J2,
                                      const PrimeContext& ctx) {
  const auto d1 = ratio_distribution(I1, J1, ctx);
  const auto d2 = ratio_distribution(I2, J2, ctx);
  std::int64_t total = 0;
  for (std::size_t t = 0; t < d1.d.size(); ++t) total += d1.d[t] * d2.d[t];
  return total;
}

// count - K1 K2 L1 L2 / p, with L counting only y != 0.
inline double cross_ratio_deviation(std::int64_t count, const Interval& I1, const Interval& J1, const Interval& I2,
                                    const Interval& J2, const PrimeContext& ctx) {
  const double m1 = static_cast<double>(lattice_count_nonzero_y(BoxRegion{I1, J1}, ctx));
  const double m2 = static_cast<double>(lattice_count_nonzero_y(BoxRegion{I2, J2}, ctx));
  return static_cast<double>(count) - m1 * m2 / static_cast<double>(ctx.p());
}

// Pairs (w, z) with w in [B+1, B+L], 1 <= z <= M and w z = 1 (mod p).
inline std::int64_t inverse_concentration_count(std::int64_t B, std::int64_t L, std::int64_t M,
                                                const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  if (B < 0 || L < 1 || B + L >= p || M < 0 || M >= p)
    throw DomainError("inverse_concentration_count needs 0 <= B < B+L < p and 0 <= M < p");
  std::int64_t count = 0;
  for (std::int64_t w = B + 1; w <= B + L; ++w) {
    const std::int64_t z = ctx.inverse_unchecked(w);
    if (z >= 1 && z <= M) ++count;
  }
  return count;
}

// {m : d m in iv} = [ceil((A+1)/d), floor((A+K)/d)].
inline Interval scaled_interval(const Interval& iv, std::int64_t d) {
  if (iv.empty()) return Interval::none();
  const std::int64_t lo = -detail::floor_div(-iv.lo(), d);
  const std::int64_t hi = detail::floor_div(iv.hi(), d);
  return Interval::closed(lo, hi);
}

// Ratio sums restricted to gcd(x, y) = 1, by Moebius inversion over the
// common divisor d: x/y = (x/d)/(y/d), so each term is a sum over a scaled box.
// gcd(0, y) = y, so (0, y) is coprime only for y = 1.
inline FactorSumTable coprime_factor_table(const BoxRegion& box, const PrimeContext& ctx,
                                           unsigned workers = default_workers()) {
  FactorSumTable table(std::vector<Complex>(static_cast<std::size_t>(ctx.p()), Complex(0.0, 0.0)), 0,
                       skipped_rows(Region{box}, ctx));
  if (box.x.empty() || box.y.empty()) return table;
  const std::int64_t d_max = std::max(box.x.hi(), box.y.hi());
  for (std::int64_t d = 1; d <= d_max; ++d) {
    if (d % ctx.p() == 0) continue;  // every y divisible by p is skipped anyway
    const int mu = mobius(d);
    if (mu == 0) continue;
    const BoxRegion scaled{scaled_interval(box.x, d), scaled_interval(box.y, d)};
    if (scaled.x.empty() || scaled.y.empty()) continue;
    table.add_scaled(FactorSumTable(scaled, ctx, workers), static_cast<double>(mu));
  }
  return table;
}

inline CountResult coprime_count(const CoefficientVector& coeffs, const ProductRegion& regions,
                                 const PrimeContext& ctx, unsigned workers = default_workers()) {
  detail::check_inputs(coeffs, regions, ctx);
  std::vector<FactorSumTable> owned;
  owned.reserve(regions.arity());
  for (const auto& f : regions.factors) {
    const auto* box = std::get_if<BoxRegion>(&f);
    if (box == nullptr) throw DomainError("coprime_count supports box factors only");
    owned.push_back(coprime_factor_table(*box, ctx, workers));
  }
  std::vector<const FactorSumTable*> tables;
  for (const auto& t : owned) tables.push_back(&t);
  CountResult out = count_from_tables(coeffs, tables, ctx, workers);
  out.skipped_rows = detail::total_skipped(regions, ctx);
  return out;
}

}  // namespace modratio
