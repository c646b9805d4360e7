#pragma once

// Dyadic cube approximation of well-shaped sets in [0,1]^d and the solution
// count N(a; p Omega) over their blow-ups.
//
// Cubes live on shifted grids: at resolution k the cube with integer index
// u has corners alpha + u/k and alpha + (u+1)/k. Grids at k and 2k share the
// shift, so each cube at level i (k = 2^i) sits in exactly one cube at level
// i-1, its parent floor(u/2). Layer B_1 is every level-1 cube inside Omega;
// layer B_i holds the level-i cubes inside Omega whose parent is not.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "modratio/counting.hpp"
#include "modratio/errors.hpp"
#include "modratio/expsums.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/geometry.hpp"
#include "modratio/parallel.hpp"

namespace modratio {

using Point = std::span<const double>;

struct WellShapedSet {
  using MemberFn = std::function<bool(Point)>;
  // (lower corner, side) -> bool
  using CubeFn = std::function<bool(Point, double)>;

  int dim = 0;
  std::string name;
  MemberFn member;
  CubeFn cube_inside;
  // May be empty; then no cube is ever pruned as disjoint.
  CubeFn cube_disjoint;
  double measure = 0.0;
  double measure_stderr = 0.0;  // nonzero only for Monte Carlo estimates
  double boundary_constant = 0.0;
  std::vector<double> box_lo;  // bounding box, inside [0,1]^dim
  std::vector<double> box_hi;

  bool disjoint(Point lo, double side) const { return cube_disjoint ? cube_disjoint(lo, side) : false; }

  static WellShapedSet ball(int dim, double radius, std::vector<double> center = {});
  static WellShapedSet ellipsoid(std::vector<double> radii, std::vector<double> center = {});
  static WellShapedSet unit_cube(int dim);
  static WellShapedSet halfspace_cap(std::vector<double> weights, double threshold);
  static WellShapedSet empty(int dim);
  static WellShapedSet from_convex_predicate(int dim, MemberFn member, double boundary_constant,
                                             std::size_t mc_samples = 200000, std::uint64_t seed = 1);
};

namespace detail {

inline double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

// Well-shaped constant for a convex body of measure mu in [0,1]^d that
// contains a ball of radius rho about a point c. Omega + eps B sits inside
// (1 + eps/rho) Omega and the points of Omega within eps of the complement lie
// outside (1 - eps/rho) Omega (both scalings about c), so
//   mu(inner shell) <= mu d eps / rho,
//   mu(outer shell) <= min(mu ((1 + eps/rho)^d - 1), 1 - mu).
// Returns the supremum over eps of both ratios to eps.
inline double convex_boundary_constant(double mu, double rho, int d) {
  const double inner = mu * d / rho;
  const double cap = std::max(0.0, 1.0 - mu);
  auto outer = [&](double eps) { return mu * (std::pow(1.0 + eps / rho, d) - 1.0); };
  // outer(eps)/eps increases, cap/eps decreases: sup sits at the crossing.
  double lo = 0.0, hi = 1.0;
  while (outer(hi) < cap && hi < 1e6) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (outer(mid) < cap ? lo : hi) = mid;
  }
  const double cross = std::max(hi, 1e-300);
  const double outer_sup = std::min(outer(cross), cap) / cross;
  return std::max(inner, outer_sup);
}

// Volume of {x in [0,1]^d : w.x <= t} by inclusion-exclusion over vertices.
inline double halfspace_cap_volume(std::vector<double> w, double t) {
  // Reflect negative weights and drop zero ones.
  std::vector<double> pos;
  for (double wi : w) {
    if (wi < 0) {
      t -= wi;
      pos.push_back(-wi);
    } else if (wi > 0) {
      pos.push_back(wi);
    }
  }
  const int d = static_cast<int>(pos.size());
  if (d == 0) return t >= 0 ? 1.0 : 0.0;
  double prod = 1.0;
  for (double wi : pos) prod *= wi;
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    double shift = 0.0;
    int bits = 0;
    for (int i = 0; i < d; ++i)
      if (mask >> i & 1U) {
        shift += pos[static_cast<std::size_t>(i)];
        ++bits;
      }
    const double r = t - shift;
    if (r > 0) total += (bits % 2 ? -1.0 : 1.0) * std::pow(r, d);
  }
  return std::clamp(total / (fact * prod), 0.0, 1.0);
}

inline std::vector<double> default_center(int dim, std::vector<double> center) {
  if (center.empty()) center.assign(static_cast<std::size_t>(dim), 0.5);
  if (static_cast<int>(center.size()) != dim) throw DomainError("center dimension mismatch");
  return center;
}

}  // namespace detail

inline WellShapedSet WellShapedSet::ellipsoid(std::vector<double> radii, std::vector<double> center) {
  const int d = static_cast<int>(radii.size());
  if (d == 0) throw DomainError("ellipsoid needs at least one radius");
  center = detail::default_center(d, std::move(center));
  WellShapedSet s;
  s.dim = d;
  s.name = "ellipsoid";
  s.box_lo.resize(radii.size());
  s.box_hi.resize(radii.size());
  double rho = radii[0], volume = detail::unit_ball_volume(d);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw DomainError("ellipsoid radii must be positive");
    if (center[i] - radii[i] < 0.0 || center[i] + radii[i] > 1.0)
      throw DomainError("ellipsoid does not fit inside the unit cube");
    s.box_lo[i] = center[i] - radii[i];
    s.box_hi[i] = center[i] + radii[i];
    rho = std::min(rho, radii[i]);
    volume *= radii[i];
  }
  s.member = [radii, center](Point x) {
    double q = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double t = (x[i] - center[i]) / radii[i];
      q += t * t;
    }
    return q <= 1.0;
  };
  // The quadratic form is separable and convex, so its maximum over a cube is
  // attained coordinatewise at the farther face and its minimum at the clamp.
  s.cube_inside = [radii, center](Point lo, double side) {
    double q = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double t = std::max(std::abs(lo[i] - center[i]), std::abs(lo[i] + side - center[i])) / radii[i];
      q += t * t;
    }
    return q <= 1.0;
  };
  s.cube_disjoint = [radii, center](Point lo, double side) {
    double q = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double nearest = std::clamp(center[i], lo[i], lo[i] + side);
      const double t = (nearest - center[i]) / radii[i];
      q += t * t;
    }
    return q >= 1.0;
  };
  s.measure = volume;
  s.boundary_constant = detail::convex_boundary_constant(volume, rho, d);
  return s;
}

inline WellShapedSet WellShapedSet::ball(int dim, double radius, std::vector<double> center) {
  WellShapedSet s = ellipsoid(std::vector<double>(static_cast<std::size_t>(dim), radius), std::move(center));
  s.name = "ball";
  return s;
}

inline WellShapedSet WellShapedSet::unit_cube(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  WellShapedSet s;
  s.dim = dim;
  s.name = "cube";
  s.member = [dim](Point x) {
    for (int i = 0; i < dim; ++i)
      if (x[i] < 0.0 || x[i] > 1.0) return false;
    return true;
  };
  s.cube_inside = [dim](Point lo, double side) {
    for (int i = 0; i < dim; ++i)
      if (lo[i] < 0.0 || lo[i] + side > 1.0) return false;
    return true;
  };
  s.cube_disjoint = [dim](Point lo, double side) {
    for (int i = 0; i < dim; ++i)
      if (lo[i] + side <= 0.0 || lo[i] >= 1.0) return true;
    return false;
  };
  s.measure = 1.0;
  // Inner shell 1 - (1 - 2 eps)^d <= 2 d eps; the outer shell is empty.
  s.boundary_constant = 2.0 * dim;
  s.box_lo.assign(static_cast<std::size_t>(dim), 0.0);
  s.box_hi.assign(static_cast<std::size_t>(dim), 1.0);
  return s;
}

inline WellShapedSet WellShapedSet::halfspace_cap(std::vector<double> weights, double threshold) {
  const int d = static_cast<int>(weights.size());
  WellShapedSet s = unit_cube(d);
  s.name = "halfspace-cap";
  auto in_cube = s.cube_inside;
  auto out_cube = s.cube_disjoint;
  s.member = [weights, threshold](Point x) {
    double v = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (x[i] < 0.0 || x[i] > 1.0) return false;
      v += weights[i] * x[i];
    }
    return v <= threshold;
  };
  s.cube_inside = [weights, threshold, in_cube](Point lo, double side) {
    if (!in_cube(lo, side)) return false;
    double v = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * (weights[i] > 0 ? lo[i] + side : lo[i]);
    return v <= threshold;
  };
  s.cube_disjoint = [weights, threshold, out_cube](Point lo, double side) {
    if (out_cube(lo, side)) return true;
    double v = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * (weights[i] > 0 ? lo[i] : lo[i] + side);
    return v >= threshold;
  };
  s.measure = detail::halfspace_cap_volume(weights, threshold);
  // Cube faces contribute 2d; a hyperplane section of the unit cube has area
  // at most sqrt(2), so the slab of half-width eps adds at most 2 sqrt(2) eps.
  s.boundary_constant = 2.0 * d + 2.0 * std::numbers::sqrt2;
  return s;
}

inline WellShapedSet WellShapedSet::empty(int dim) {
  WellShapedSet s;
  s.dim = dim;
  s.name = "empty";
  s.member = [](Point) { return false; };
  s.cube_inside = [](Point, double) { return false; };
  s.cube_disjoint = [](Point, double) { return true; };
  s.box_lo.assign(static_cast<std::size_t>(dim), 0.5);
  s.box_hi.assign(static_cast<std::size_t>(dim), 0.5);
  return s;
}

// A convex set known only through membership. Cube containment tests the
// 2^d vertices plus the 2d face centres, which is exact for convex sets;
// the measure is a seeded Monte Carlo estimate with its standard error.
inline WellShapedSet WellShapedSet::from_convex_predicate(int dim, MemberFn member, double boundary_constant,
                                                          std::size_t mc_samples, std::uint64_t seed) {
  if (dim < 1 || dim > 20) throw DomainError("predicate sets support 1 <= dim <= 20");
  WellShapedSet s;
  s.dim = dim;
  s.name = "predicate";
  s.member = member;
  s.cube_inside = [dim, member](Point lo, double side) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
      for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = lo[i] + ((mask >> i & 1U) ? side : 0.0);
      if (!member(v)) return false;
    }
    for (int f = 0; f < 2 * dim; ++f) {
      for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = lo[i] + 0.5 * side;
      v[static_cast<std::size_t>(f / 2)] = lo[f / 2] + (f % 2 ? side : 0.0);
      if (!member(v)) return false;
    }
    return true;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(dim));
  std::size_t hits = 0;
  for (std::size_t t = 0; t < mc_samples; ++t) {
    for (auto& xi : x) xi = unif(rng);
    if (member(x)) ++hits;
  }
  const double n = static_cast<double>(std::max<std::size_t>(mc_samples, 1));
  s.measure = static_cast<double>(hits) / n;
  s.measure_stderr = std::sqrt(s.measure * (1.0 - s.measure) / n);
  s.boundary_constant = boundary_constant;
  s.box_lo.assign(static_cast<std::size_t>(dim), 0.0);
  s.box_hi.assign(static_cast<std::size_t>(dim), 1.0);
  return s;
}

// `ball:r`, `ellipsoid:r1,...,rd`, `cube`, `halfspace-cap:w1,...,wd,t`.
inline WellShapedSet parse_shape(const std::string& spec, int dim) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto numbers = [&]() {
    std::vector<double> out;
    for (const auto& f : detail::split(body, ',')) {
      try {
        out.push_back(std::stod(f));
      } catch (const std::exception&) {
        throw DomainError("bad number '" + f + "' in shape '" + spec + "'");
      }
    }
    return out;
  };
  if (kind == "cube") return WellShapedSet::unit_cube(dim);
  if (kind == "ball") {
    const auto v = numbers();
    if (v.size() != 1) throw DomainError("ball shape takes one radius");
    return WellShapedSet::ball(dim, v[0]);
  }
  if (kind == "ellipsoid") {
    const auto v = numbers();
    if (static_cast<int>(v.size()) != dim) throw DomainError("ellipsoid needs one radius per coordinate");
    return WellShapedSet::ellipsoid(v);
  }
  if (kind == "halfspace-cap") {
    auto v = numbers();
    if (static_cast<int>(v.size()) != dim + 1) throw DomainError("halfspace-cap needs d weights and a threshold");
    const double t = v.back();
    v.pop_back();
    return WellShapedSet::halfspace_cap(v, t);
  }
  if (kind == "empty") return WellShapedSet::empty(dim);
  throw DomainError("unknown shape '" + kind + "'");
}

// Shift alpha of the grids C(k).
struct ShiftedCubeFamily {
  std::vector<double> alpha;
  int dim() const { return static_cast<int>(alpha.size()); }
};

struct Cube {
  int level = 0;  // side 2^-level
  std::vector<std::int32_t> u;

  double side() const { return std::ldexp(1.0, -level); }
  std::vector<double> lower(const ShiftedCubeFamily& shift) const {
    std::vector<double> lo(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) lo[i] = shift.alpha[i] + u[i] * side();
    return lo;
  }
};

namespace detail {

inline bool is_square(std::int64_t q) {
  const std::int64_t r = isqrt_floor(q);
  return r * r == q;
}

inline double frac(double x) { return x - std::floor(x); }

// No corner coordinate p (alpha_i + u/k) of any level-M cube near [0,1] may
// be (numerically) an integer, so no lattice point of the blow-up lies on a
// cube face.
inline bool shift_admissible(double alpha, std::int64_t p, std::int64_t k) {
  for (std::int64_t u = -k - 1; u <= 2 * k + 1; ++u) {
    const double v = static_cast<double>(p) * (alpha + static_cast<double>(u) / static_cast<double>(k));
    if (std::abs(v - std::round(v)) < 1e-7) return false;
  }
  return true;
}

}  // namespace detail

// alpha_i = frac(sqrt(q_i)) over the non-squares q = 2, 3, 5, 6, ...; any
// coordinate failing the corner test for (p, 2^M) is redrawn from a seeded
// generator.
inline ShiftedCubeFamily make_shift(int dim, std::int64_t p, int M, std::uint64_t seed = 0x5eed) {
  ShiftedCubeFamily s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  std::int64_t q = 2;
  const std::int64_t k = std::int64_t{1} << std::max(M, 0);
  for (int i = 0; i < dim; ++i) {
    while (detail::is_square(q)) ++q;
    double a = detail::frac(std::sqrt(static_cast<double>(q)));
    ++q;
    while (!detail::shift_admissible(a, p, k)) a = unif(rng);
    s.alpha.push_back(a);
  }
  return s;
}

struct MChoice {
  int M = 0;
  bool degenerate = false;
  std::string warning;
};

// Largest M with 2^M <= p^(2(n-1)/(3n-2)); this also gives 2^M < p.
inline MChoice choose_M(std::int64_t p, int n) {
  MChoice out;
  if (n < 1 || p < 2) throw DomainError("choose_M needs n >= 1 and p >= 2");
  const long double exponent = 2.0L * (n - 1) / (3.0L * n - 2.0L);
  const long double bound = exponent * std::log2(static_cast<long double>(p));
  out.M = static_cast<int>(std::floor(bound + 1e-12L));
  if (n < 3) {
    out.degenerate = true;
    out.warning = "n < 3: outside the range where the blow-up asymptotic is proved";
  }
  if (out.M <= 0) {
    out.M = std::max(out.M, 0);
    out.degenerate = true;
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "p too small: M = 0 leaves no dyadic layers";
  }
  return out;
}

namespace detail {

// Candidate indices along axis i at resolution k for cubes meeting [lo, hi].
inline std::pair<std::int64_t, std::int64_t> axis_range(double alpha, double lo, double hi, std::int64_t k) {
  const auto kd = static_cast<double>(k);
  return {static_cast<std::int64_t>(std::floor((lo - alpha) * kd)),
          static_cast<std::int64_t>(std::floor((hi - alpha) * kd))};
}

}  // namespace detail

// Calls visit(u, lower_corner) for every cube of C(k) inside Omega.
template <class Visit>
void for_each_cube_inside(const WellShapedSet& omega, std::int64_t k, const ShiftedCubeFamily& shift, Visit&& visit) {
  if (k < 1) throw DomainError("grid resolution must be positive");
  const auto d = static_cast<std::size_t>(omega.dim);
  if (shift.alpha.size() != d) throw DomainError("shift dimension mismatch");
  if (omega.box_hi.empty() || omega.box_lo[0] > omega.box_hi[0]) return;
  std::vector<std::int64_t> first(d), last(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::tie(first[i], last[i]) = detail::axis_range(shift.alpha[i], omega.box_lo[i], omega.box_hi[i], k);
  }
  const double side = 1.0 / static_cast<double>(k);
  std::vector<std::int32_t> u(d);
  std::vector<double> lo(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = static_cast<std::int32_t>(first[i]);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) lo[i] = shift.alpha[i] + u[i] * side;
    if (omega.cube_inside(lo, side)) visit(std::span<const std::int32_t>(u), Point(lo));
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (u[i] < last[i]) {
        ++u[i];
        break;
      }
      u[i] = static_cast<std::int32_t>(first[i]);
    }
    if (i == d) return;
  }
}

inline std::int64_t count_cubes_inside(const WellShapedSet& omega, std::int64_t k, const ShiftedCubeFamily& shift) {
  std::int64_t n = 0;
  for_each_cube_inside(omega, k, shift, [&](auto, auto) { ++n; });
  return n;
}

// C_0(k) materialised; k must be a power of two for the level to be exact.
inline std::vector<Cube> cubes_inside(const WellShapedSet& omega, std::int64_t k, const ShiftedCubeFamily& shift) {
  std::vector<Cube> out;
  const int level = static_cast<int>(std::lround(std::log2(static_cast<double>(k))));
  for_each_cube_inside(omega, k, shift, [&](std::span<const std::int32_t> u, Point) {
    out.push_back({level, std::vector<std::int32_t>(u.begin(), u.end())});
  });
  return out;
}

// Depth-first construction of layers B_1..B_M. A cube is refined only while
// it straddles the boundary; visit(level, u, lower_corner, side) is called for
// every layer cube. Memory is O(M 2^d) regardless of the layer sizes.
template <class Visit>
void visit_dyadic_layers(const WellShapedSet& omega, int M, const ShiftedCubeFamily& shift, Visit&& visit) {
  if (M < 1) return;
  const auto d = static_cast<std::size_t>(omega.dim);
  if (shift.alpha.size() != d) throw DomainError("shift dimension mismatch");
  if (omega.box_hi.empty() || omega.box_lo[0] > omega.box_hi[0]) return;
  if (M > 30) throw SizeError("decomposition depth too large");

  std::vector<std::int32_t> u(d);
  std::vector<double> lo(d);

  std::function<void(int)> descend = [&](int level) {
    const double side = std::ldexp(1.0, -level);
    for (std::size_t i = 0; i < d; ++i) lo[i] = shift.alpha[i] + u[i] * side;
    if (omega.cube_inside(lo, side)) {
      visit(level, std::span<const std::int32_t>(u), Point(lo), side);
      return;
    }
    if (level == M || omega.disjoint(lo, side)) return;
    const std::vector<std::int32_t> parent = u;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      for (std::size_t i = 0; i < d; ++i) u[i] = 2 * parent[i] + static_cast<std::int32_t>(mask >> i & 1U);
      descend(level + 1);
    }
    u = parent;
  };

  // Roots: level-1 cubes meeting the bounding box.
  std::vector<std::int64_t> first(d), last(d);
  for (std::size_t i = 0; i < d; ++i)
    std::tie(first[i], last[i]) = detail::axis_range(shift.alpha[i], omega.box_lo[i], omega.box_hi[i], 2);
  std::vector<std::int32_t> root(d);
  for (std::size_t i = 0; i < d; ++i) root[i] = static_cast<std::int32_t>(first[i]);
  for (;;) {
    u = root;
    descend(1);
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (root[i] < last[i]) {
        ++root[i];
        break;
      }
      root[i] = static_cast<std::int32_t>(first[i]);
    }
    if (i == d) return;
  }
}

struct DyadicDecomposition {
  int dim = 0;
  int M = 0;
  ShiftedCubeFamily shift;
  std::vector<std::vector<Cube>> layers;  // layers[i-1] = B_i
  double covered_measure = 0.0;

  std::vector<std::int64_t> layer_sizes() const {
    std::vector<std::int64_t> out;
    for (const auto& l : layers) out.push_back(static_cast<std::int64_t>(l.size()));
    return out;
  }
};

inline DyadicDecomposition dyadic_layers(const WellShapedSet& omega, int M, const ShiftedCubeFamily& shift,
                                         std::size_t max_cubes = 20'000'000) {
  if (M < 1) throw DomainError("decomposition depth must be at least 1");
  DyadicDecomposition out{omega.dim, M, shift, std::vector<std::vector<Cube>>(static_cast<std::size_t>(M)), 0.0};
  std::size_t total = 0;
  visit_dyadic_layers(omega, M, shift, [&](int level, std::span<const std::int32_t> u, Point, double) {
    if (++total > max_cubes) throw SizeError("decomposition exceeds " + std::to_string(max_cubes) + " cubes");
    out.layers[static_cast<std::size_t>(level - 1)].push_back({level, std::vector<std::int32_t>(u.begin(), u.end())});
  });
  for (std::size_t i = 0; i < out.layers.size(); ++i)
    out.covered_measure +=
        static_cast<double>(out.layers[i].size()) * std::ldexp(1.0, -static_cast<int>((i + 1) * omega.dim));
  return out;
}

// Structural audit of a decomposition: every cube inside Omega, no ancestor
// of a layer cube inside Omega (which gives disjointness across layers), and
// no repeated cube within a layer.
struct DecompositionAudit {
  std::vector<std::int64_t> layer_sizes;
  std::int64_t containment_failures = 0;
  std::int64_t nesting_failures = 0;
  std::int64_t duplicate_cubes = 0;
  double covered_measure = 0.0;
  double cardinality_constant = 0.0;  // max_i #B_i / 2^(i(d-1))

  bool ok() const { return containment_failures == 0 && nesting_failures == 0 && duplicate_cubes == 0; }
};

inline DecompositionAudit audit_dyadic_layers(const WellShapedSet& omega, int M, const ShiftedCubeFamily& shift) {
  const auto d = static_cast<std::size_t>(omega.dim);
  DecompositionAudit audit;
  audit.layer_sizes.assign(static_cast<std::size_t>(std::max(M, 0)), 0);
  // Packed keys per layer for the duplicate check; 10 bits per coordinate.
  const bool packable = d * 10 <= 64 && M <= 8;
  std::vector<std::vector<std::uint64_t>> keys(audit.layer_sizes.size());
  std::vector<double> lo(d);
  visit_dyadic_layers(omega, M, shift, [&](int level, std::span<const std::int32_t> u, Point corner, double side) {
    ++audit.layer_sizes[static_cast<std::size_t>(level - 1)];
    if (!omega.cube_inside(corner, side)) ++audit.containment_failures;
    std::vector<std::int32_t> anc(u.begin(), u.end());
    for (int l = level - 1; l >= 1; --l) {
      const double s = std::ldexp(1.0, -l);
      for (std::size_t i = 0; i < d; ++i) {
        anc[i] = static_cast<std::int32_t>(std::floor(anc[i] / 2.0));
        lo[i] = shift.alpha[i] + anc[i] * s;
      }
      if (omega.cube_inside(lo, s)) {
        ++audit.nesting_failures;
        break;
      }
    }
    if (packable) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < d; ++i)
        key = (key << 10U) | (static_cast<std::uint64_t>(u[i] + 256) & 0x3FFU);
      keys[static_cast<std::size_t>(level - 1)].push_back(key);
    }
  });
  for (auto& layer : keys) {
    std::sort(layer.begin(), layer.end());
    audit.duplicate_cubes += static_cast<std::int64_t>(layer.end() - std::unique(layer.begin(), layer.end()));
  }
  for (std::size_t i = 0; i < audit.layer_sizes.size(); ++i) {
    const int level = static_cast<int>(i) + 1;
    audit.covered_measure += static_cast<double>(audit.layer_sizes[i]) * std::ldexp(1.0, -level * omega.dim);
    audit.cardinality_constant =
        std::max(audit.cardinality_constant,
                 static_cast<double>(audit.layer_sizes[i]) / std::ldexp(1.0, level * (omega.dim - 1)));
  }
  return audit;
}

struct BlowupCount {
  std::int64_t layer_sum = 0;     // sum of N(a; p Gamma) over all layer cubes
  double main_term = 0.0;         // p^(2n-1) mu(Omega)
  double covered_measure = 0.0;
  double uncovered_bound = 0.0;   // C sqrt(2n) 2^-M
  double gap_bound = 0.0;         // p^(2n-1) (C sqrt(2n) 2^-M + C sqrt(2n) / p)
  int M = 0;
  std::vector<std::int64_t> layer_sizes;
  double max_residual = 0.0;
  std::string warning;
};

// Integer points of p * [lo, lo + side] along one axis, clipped to [0, p-1].
inline Interval blowup_axis(double lo, double side, std::int64_t p) {
  const auto pd = static_cast<double>(p);
  const auto a = static_cast<std::int64_t>(std::ceil(pd * lo));
  const auto b = static_cast<std::int64_t>(std::floor(pd * (lo + side)));
  return Interval::closed(std::max<std::int64_t>(a, 0), std::min<std::int64_t>(b, p - 1));
}

// Lower-bound count over the dyadic layers: each cube Gamma contributes the
// exact count over the integer box inside p Gamma. Coordinates are ordered
// (x_1, y_1, ..., x_n, y_n).
inline BlowupCount count_in_blowup(const CoefficientVector& coeffs, const WellShapedSet& omega,
                                   const PrimeContext& ctx, int M_override = -1, std::uint64_t seed = 0x5eed,
                                   unsigned workers = default_workers()) {
  const int n = static_cast<int>(coeffs.n());
  if (omega.dim != 2 * n) throw DomainError("set dimension must be 2n");
  const std::int64_t p = ctx.p();
  BlowupCount out;
  const MChoice choice = choose_M(p, n);
  out.M = M_override >= 0 ? M_override : choice.M;
  out.warning = choice.warning;
  if ((std::int64_t{1} << out.M) >= p) throw DomainError("cube side must exceed 1/p");
  out.main_term = std::pow(static_cast<double>(p), 2 * n - 1) * omega.measure;
  const double diam = std::sqrt(2.0 * n);
  out.uncovered_bound = omega.boundary_constant * diam * std::ldexp(1.0, -out.M);
  out.gap_bound = std::pow(static_cast<double>(p), 2 * n - 1) *
                  (out.uncovered_bound + omega.boundary_constant * diam / static_cast<double>(p));
  out.layer_sizes.assign(static_cast<std::size_t>(out.M), 0);
  if (out.M == 0) return out;

  const ShiftedCubeFamily shift = make_shift(omega.dim, p, out.M, seed);
  // Tables keyed by (level, u_x, u_y): every cube at a level reuses the same
  // few axis intervals.
  std::map<std::tuple<int, std::int32_t, std::int32_t>, FactorSumTable> cache;
  std::vector<const FactorSumTable*> tables(static_cast<std::size_t>(n));
  visit_dyadic_layers(omega, out.M, shift, [&](int level, std::span<const std::int32_t> u, Point lo, double side) {
    ++out.layer_sizes[static_cast<std::size_t>(level - 1)];
    out.covered_measure += std::ldexp(1.0, -level * omega.dim);
    bool empty = false;
    for (int j = 0; j < n; ++j) {
      const auto key = std::make_tuple(level, u[2 * j], u[2 * j + 1]);
      auto it = cache.find(key);
      if (it == cache.end()) {
        const BoxRegion box{blowup_axis(lo[2 * j], side, p), blowup_axis(lo[2 * j + 1], side, p)};
        it = cache.emplace(key, FactorSumTable(box, ctx, workers)).first;
      }
      if (it->second.points() == 0) empty = true;
      tables[static_cast<std::size_t>(j)] = &it->second;
    }
    if (empty) return;
    const CountResult r = count_from_tables(coeffs, tables, ctx, workers);
    out.layer_sum += r.count;
    out.max_residual = std::max(out.max_residual, r.residual);
  });
  return out;
}

inline constexpr double kExactBlowupBudget = 2.0e10;

// N(a; p Omega) by enumeration: every (y_1, x_2, y_2, ..., x_n, y_n) in the
// bounding box of p Omega, x_1 solved from the congruence, then membership of
// (x_1/p, y_1/p, ..., y_n/p). All coordinates lie in [0, p-1], y_j != 0.
inline std::int64_t exact_blowup_count(const CoefficientVector& coeffs, const WellShapedSet& omega,
                                       const PrimeContext& ctx, unsigned workers = default_workers()) {
  const int n = static_cast<int>(coeffs.n());
  if (omega.dim != 2 * n) throw DomainError("set dimension must be 2n");
  const std::int64_t p = ctx.p();
  const auto pd = static_cast<double>(p);
  if (omega.box_hi.empty() || omega.box_lo[0] > omega.box_hi[0]) return 0;

  std::vector<Interval> range(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) {
    const auto lo = static_cast<std::int64_t>(std::ceil(pd * omega.box_lo[static_cast<std::size_t>(i)] - 1e-9));
    const auto hi = static_cast<std::int64_t>(std::floor(pd * omega.box_hi[static_cast<std::size_t>(i)] + 1e-9));
    range[static_cast<std::size_t>(i)] =
        Interval::closed(std::max<std::int64_t>(lo, i % 2 == 1 ? 1 : 0), std::min<std::int64_t>(hi, p - 1));
    if (range[static_cast<std::size_t>(i)].empty()) return 0;
  }
  double work = 1.0;
  for (int i = 1; i < 2 * n; ++i) work *= static_cast<double>(range[static_cast<std::size_t>(i)].size());
  if (work > kExactBlowupBudget) throw SizeError("exact blow-up enumeration exceeds budget");

  const std::int64_t inv_a1 = ctx.inverse_unchecked(coeffs.a[0]);
  // Free coordinates are y_1 (innermost) and x_2..y_n; the outermost one is
  // split across workers.
  const int outer = 2 * n - 1;
  const Interval outer_range = range[static_cast<std::size_t>(outer)];
  std::vector<std::int64_t> partial(static_cast<std::size_t>(outer_range.size()), 0);

  parallel_for(0, outer_range.size(), workers, [&](std::int64_t slot) {
    std::vector<double> point(static_cast<std::size_t>(2 * n));
    std::vector<std::int64_t> c(static_cast<std::size_t>(2 * n));
    c[static_cast<std::size_t>(outer)] = outer_range.lo() + slot;
    for (int i = 2; i < outer; ++i) c[static_cast<std::size_t>(i)] = range[static_cast<std::size_t>(i)].lo();
    const Interval x1_range = range[0];
    const Interval y1_range = range[1];
    std::int64_t count = 0;
    for (;;) {
      // rhs = (a_0 - sum_{j >= 2} a_j x_j / y_j) / a_1, so x_1 = rhs * y_1.
      std::int64_t s = 0;
      for (int j = 1; j < n; ++j) {
        const auto x = c[static_cast<std::size_t>(2 * j)];
        const auto y = c[static_cast<std::size_t>(2 * j + 1)];
        s = ctx.add(s, ctx.mul(coeffs.a[static_cast<std::size_t>(j)], ctx.mul(x, ctx.inverse_unchecked(y))));
      }
      const std::int64_t rhs = ctx.mul(ctx.sub(coeffs.a0, s), inv_a1);
      for (int i = 2; i < 2 * n; ++i)
        point[static_cast<std::size_t>(i)] = static_cast<double>(c[static_cast<std::size_t>(i)]) / pd;
      std::int64_t x1 = ctx.mul(rhs, y1_range.lo());
      for (std::int64_t y1 = y1_range.lo(); y1 <= y1_range.hi(); ++y1) {
        if (x1_range.contains(x1)) {
          point[0] = static_cast<double>(x1) / pd;
          point[1] = static_cast<double>(y1) / pd;
          if (omega.member(point)) ++count;
        }
        x1 += rhs;
        if (x1 >= p) x1 -= p;
      }
      int i = 2;
      for (; i < outer; ++i) {
        auto& ci = c[static_cast<std::size_t>(i)];
        if (ci < range[static_cast<std::size_t>(i)].hi()) {
          ++ci;
          break;
        }
        ci = range[static_cast<std::size_t>(i)].lo();
      }
      if (i >= outer) break;
    }
    partial[static_cast<std::size_t>(slot)] = count;
  });
  std::int64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace modratio
