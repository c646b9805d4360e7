#pragma once

// Exponential sums with ratios: sum of e_p(a x / y) over a region, short
// Kloosterman sums over an interval, the second moment over a, and the
// level-set counts of |rho(a/y)| used when bounding double sums.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "modratio/errors.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/geometry.hpp"
#include "modratio/parallel.hpp"

namespace modratio {

struct SumValue {
  Complex value{0.0, 0.0};
  std::int64_t terms = 0;
  std::int64_t skipped_rows = 0;
};

namespace detail {

// Row of a region reduced to what the character sum needs.
struct RatioRow {
  std::int64_t inv_y;  // y^{-1} mod p
  std::int64_t lo;
  std::int64_t hi;
};

struct RatioRows {
  std::vector<RatioRow> rows;
  std::int64_t terms = 0;
  std::int64_t skipped = 0;
};

inline RatioRows ratio_rows(const Region& region, const PrimeContext& ctx) {
  RatioRows out;
  for_each_row(region, [&](std::int64_t y, const Interval& row) {
    const std::int64_t yr = ctx.reduce(y);
    if (yr == 0) {
      ++out.skipped;
      return;
    }
    out.rows.push_back({ctx.inverse_unchecked(yr), row.lo(), row.hi()});
    out.terms += row.size();
  });
  return out;
}

inline Complex rows_sum(std::int64_t a, const std::vector<RatioRow>& rows, const PrimeContext& ctx) {
  ComplexAccumulator acc;
  for (const auto& r : rows) acc.add(geometric_char_sum(ctx.mul(a, r.inv_y), r.lo, r.hi, ctx));
  return acc.value();
}

}  // namespace detail

// Sum of e_p(a x / y) over the integer points of a region with y != 0 mod p.
// Each row is one closed-form geometric sum.
inline SumValue ratio_double_sum_region(std::int64_t a, const Region& region, const PrimeContext& ctx) {
  if (ctx.reduce(a) == 0) throw DomainError("ratio sum needs a coprime to p");
  const auto rows = detail::ratio_rows(region, ctx);
  return {detail::rows_sum(ctx.reduce(a), rows.rows, ctx), rows.terms, rows.skipped};
}

inline SumValue ratio_double_sum(std::int64_t a, const Interval& I, const Interval& J, const PrimeContext& ctx) {
  return ratio_double_sum_region(a, BoxRegion{I, J}, ctx);
}

// Sum over u in J, u != 0 mod p, of e_p(lambda / u).
inline SumValue kloosterman_interval(std::int64_t lambda, const Interval& J, const PrimeContext& ctx) {
  SumValue out;
  const std::int64_t lam = ctx.reduce(lambda);
  ComplexAccumulator acc;
  for (std::int64_t u = J.lo(); u <= J.hi(); ++u) {
    const std::int64_t ur = ctx.reduce(u);
    if (ur == 0) {
      ++out.skipped_rows;
      continue;
    }
    acc.add(ctx.root_unchecked(ctx.mul(lam, ctx.inverse_unchecked(ur))));
    ++out.terms;
  }
  out.value = acc.value();
  return out;
}

// S(c) = sum over the region of e_p(c x / y), tabulated for every c in F_p.
// One table serves every coefficient a_j and every lambda in a counting run.
class FactorSumTable {
public:
  FactorSumTable(const Region& region, const PrimeContext& ctx, unsigned workers = default_workers())
      : values_(static_cast<std::size_t>(ctx.p())) {
    const auto rows = detail::ratio_rows(region, ctx);
    points_ = rows.terms;
    skipped_ = rows.skipped;
    values_[0] = Complex(static_cast<double>(rows.terms), 0.0);
    parallel_for(1, ctx.p(), workers, [&](std::int64_t c) {
      values_[static_cast<std::size_t>(c)] = detail::rows_sum(c, rows.rows, ctx);
    });
  }

  FactorSumTable(std::vector<Complex> values, std::int64_t points, std::int64_t skipped)
      : values_(std::move(values)), points_(points), skipped_(skipped) {}

  // this += weight * other, entrywise.
  void add_scaled(const FactorSumTable& other, double weight) {
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += weight * other.values_[c];
    points_ += static_cast<std::int64_t>(weight) * other.points_;
  }

  const Complex& operator[](std::int64_t c) const { return values_[static_cast<std::size_t>(c)]; }
  std::int64_t points() const { return points_; }
  std::int64_t skipped_rows() const { return skipped_; }
  std::size_t size() const { return values_.size(); }

private:
  std::vector<Complex> values_;
  std::int64_t points_ = 0;
  std::int64_t skipped_ = 0;
};

// Sum over a = 1..p-1 of |S(a)|^2 for the box I x J.
inline double second_moment_over_a(const Interval& I, const Interval& J, const PrimeContext& ctx,
                                   unsigned workers = default_workers()) {
  const FactorSumTable table(BoxRegion{I, J}, ctx, workers);
  return chunked_reduce(
      1, ctx.p(), 1024, workers,
      [&](std::int64_t lo, std::int64_t hi) {
        CompensatedSum acc;
        for (std::int64_t a = lo; a < hi; ++a) acc.add(std::norm(table[a]));
        return acc.value();
      },
      [](double x, double y) { return x + y; }, 0.0);
}

// Rows of an interval J sorted by the size of rho(a/y):
//   R   = #{y : |rho| < e^I*}
//   T_j = #{y : e^j <= |rho| < e^(j+1)},  j = I*, ..., J*
// with I* = floor(log(2p/K)) and J* = floor(log 2p).
struct LevelSetCounts {
  int I_star = 0;
  int J_star = 0;
  std::int64_t R = 0;
  std::vector<std::int64_t> T;  // T[j - I_star]

  std::int64_t T_at(int j) const {
    if (j < I_star || j > J_star) return 0;
    return T[static_cast<std::size_t>(j - I_star)];
  }
  std::int64_t total() const {
    std::int64_t s = R;
    for (auto t : T) s += t;
    return s;
  }
};

inline LevelSetCounts level_set_counts(std::int64_t a, std::int64_t K, const Interval& J, const PrimeContext& ctx) {
  if (ctx.reduce(a) == 0) throw DomainError("level_set_counts needs a coprime to p");
  if (K < 1 || K > ctx.p()) throw DomainError("level_set_counts needs 1 <= K <= p");
  const double p = static_cast<double>(ctx.p());
  LevelSetCounts out;
  out.I_star = static_cast<int>(std::floor(std::log(2.0 * p / static_cast<double>(K))));
  out.J_star = static_cast<int>(std::floor(std::log(2.0 * p)));
  out.T.assign(static_cast<std::size_t>(out.J_star - out.I_star + 1), 0);
  const double lower = std::exp(static_cast<double>(out.I_star));
  for (std::int64_t y = J.lo(); y <= J.hi(); ++y) {
    if (ctx.reduce(y) == 0) continue;
    const auto w = static_cast<double>(std::llabs(centered_residue(a, y, ctx).value));
    if (w < lower) {
      ++out.R;
      continue;
    }
    int j = static_cast<int>(std::floor(std::log(w)));
    // Guard the floor against log rounding at exact powers.
    while (j > out.I_star && w < std::exp(static_cast<double>(j))) --j;
    while (j < out.J_star && w >= std::exp(static_cast<double>(j + 1))) ++j;
    j = std::max(j, out.I_star);
    ++out.T[static_cast<std::size_t>(j - out.I_star)];
  }
  return out;
}

}  // namespace modratio
