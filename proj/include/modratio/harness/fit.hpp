#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "modratio/harness/sweep.hpp"

namespace modratio::harness {

struct ExponentFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double max_ratio = 0.0;
  std::size_t points = 0;  // pairs with y > 0 entering the fit

  bool defined() const { return !std::isnan(slope); }
};

// Least squares of log y against log x over the pairs with y > 0.
inline ExponentFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  ExponentFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++fit.points;
  }
  if (fit.points < 2) return fit;
  const auto m = static_cast<double>(fit.points);
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

// Slope of log(abs_error) against log(p), plus the largest error/envelope
// ratio. The slope is undefined when fewer than two rows have nonzero error.
inline ExponentFit fit_exponent(const std::vector<SweepRow>& rows) {
  std::vector<double> x, y;
  double max_ratio = 0.0;
  for (const auto& r : rows) {
    x.push_back(static_cast<double>(r.p));
    y.push_back(r.abs_error);
    max_ratio = std::max(max_ratio, r.ratio);
  }
  ExponentFit fit = fit_loglog(x, y);
  fit.max_ratio = max_ratio;
  return fit;
}

}  // namespace modratio::harness
