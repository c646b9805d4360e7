#pragma once

// Integer regions in the (x, y) plane: boxes, convex regions given row by
// row, and disks. Each region answers row queries (the x-range at height y);
// everything else is built on that.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "modratio/errors.hpp"
#include "modratio/fpcore.hpp"

namespace modratio {

inline std::int64_t isqrt_floor(std::int64_t v) {
  if (v < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (s > 0 && s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

// The integers A+1, ..., A+K.
struct Interval {
  std::int64_t offset = 0;
  std::int64_t length = 0;

  std::int64_t lo() const { return offset + 1; }
  std::int64_t hi() const { return offset + length; }
  bool empty() const { return length <= 0; }
  std::int64_t size() const { return length > 0 ? length : 0; }
  bool contains(std::int64_t v) const { return !empty() && v >= lo() && v <= hi(); }

  static Interval closed(std::int64_t lo, std::int64_t hi) {
    return {lo - 1, hi >= lo ? hi - lo + 1 : 0};
  }
  static Interval none() { return {0, 0}; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
  if (a.empty() || b.empty()) return Interval::none();
  return Interval::closed(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

struct BoxRegion {
  Interval x;
  Interval y;
};

// rows[k] is the x-range at height y.lo() + k.
struct ConvexRegion {
  Interval y;
  std::vector<Interval> rows;

  static ConvexRegion single_point(std::int64_t x0, std::int64_t y0) {
    return {Interval::closed(y0, y0), {Interval::closed(x0, x0)}};
  }
};

// Integer points with (x-b)^2 + (y-c)^2 <= r^2, r = radius_num / radius_den.
struct DiskRegion {
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t radius_num = 0;
  std::int64_t radius_den = 1;
  std::int64_t r2_floor = 0;  // floor(r^2); all comparisons use this

  static DiskRegion make(std::int64_t b, std::int64_t c, std::int64_t num, std::int64_t den = 1) {
    if (num <= 0 || den <= 0) throw DomainError("disk radius must be positive");
    const auto n2 = static_cast<__int128>(num) * num;
    const auto d2 = static_cast<__int128>(den) * den;
    return {b, c, num, den, static_cast<std::int64_t>(n2 / d2)};
  }
  std::int64_t reach() const { return isqrt_floor(r2_floor); }
};

using Region = std::variant<BoxRegion, ConvexRegion, DiskRegion>;

struct ProductRegion {
  std::vector<Region> factors;
  std::size_t arity() const { return factors.size(); }
};

inline Interval y_extent(const Region& region) {
  return std::visit(
      [](const auto& r) -> Interval {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          return r.x.empty() ? Interval::none() : r.y;
        } else if constexpr (std::is_same_v<T, ConvexRegion>) {
          return r.y;
        } else {
          const std::int64_t s = r.reach();
          return Interval::closed(r.c - s, r.c + s);
        }
      },
      region);
}

inline Interval row_slice(const Region& region, std::int64_t y) {
  return std::visit(
      [y](const auto& r) -> Interval {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          return r.y.contains(y) ? r.x : Interval::none();
        } else if constexpr (std::is_same_v<T, ConvexRegion>) {
          if (!r.y.contains(y)) return Interval::none();
          const auto k = static_cast<std::size_t>(y - r.y.lo());
          return k < r.rows.size() ? r.rows[k] : Interval::none();
        } else {
          const std::int64_t dy = y - r.c;
          const std::int64_t s = isqrt_floor(r.r2_floor - dy * dy);
          if (s < 0) return Interval::none();
          return Interval::closed(r.b - s, r.b + s);
        }
      },
      region);
}

// Visits (y, row) for every nonempty row, bottom to top.
template <class Fn>
void for_each_row(const Region& region, Fn&& fn) {
  const Interval ys = y_extent(region);
  for (std::int64_t y = ys.lo(); y <= ys.hi(); ++y) {
    const Interval row = row_slice(region, y);
    if (!row.empty()) fn(y, row);
  }
}

inline std::int64_t lattice_count(const Region& region) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) return box->x.size() * box->y.size();
  std::int64_t total = 0;
  for_each_row(region, [&](std::int64_t, const Interval& row) { total += row.size(); });
  return total;
}

inline std::int64_t lattice_count(const ProductRegion& product) {
  std::int64_t total = 1;
  for (const auto& f : product.factors) total *= lattice_count(f);
  return total;
}

// Points with y not divisible by p; the only ones on which x/y is defined.
inline std::int64_t lattice_count_nonzero_y(const Region& region, const PrimeContext& ctx) {
  std::int64_t total = 0;
  for_each_row(region, [&](std::int64_t y, const Interval& row) {
    if (ctx.reduce(y) != 0) total += row.size();
  });
  return total;
}

// Nonempty rows at heights y divisible by p.
inline std::int64_t skipped_rows(const Region& region, const PrimeContext& ctx) {
  std::int64_t skipped = 0;
  const Interval ys = y_extent(region);
  if (ys.empty()) return 0;
  const std::int64_t p = ctx.p();
  std::int64_t first = ys.lo() + ctx.reduce(-ys.lo());
  for (std::int64_t y = first; y <= ys.hi(); y += p)
    if (!row_slice(region, y).empty()) ++skipped;
  return skipped;
}

// Bounding x-range over all rows.
inline Interval x_extent(const Region& region) {
  std::int64_t lo = 0, hi = -1;
  bool any = false;
  for_each_row(region, [&](std::int64_t, const Interval& row) {
    if (!any) {
      lo = row.lo();
      hi = row.hi();
      any = true;
    } else {
      lo = std::min(lo, row.lo());
      hi = std::max(hi, row.hi());
    }
  });
  return any ? Interval::closed(lo, hi) : Interval::none();
}

// Coordinates must lie in [0, p] and no interval may hold two integers
// congruent mod p. Checked once when a region is handed to a counter.
inline void check_region(const Region& region, const PrimeContext& ctx) {
  const std::int64_t p = ctx.p();
  auto check = [p](const Interval& iv, const char* what) {
    if (iv.empty()) return;
    if (iv.lo() < 0 || iv.hi() > p || iv.length > p)
      throw DomainError(std::string(what) + " [" + std::to_string(iv.lo()) + "," + std::to_string(iv.hi()) +
                        "] is not inside [0," + std::to_string(p) + "]");
  };
  check(y_extent(region), "y-range");
  check(x_extent(region), "x-range");
}

inline void check_region(const ProductRegion& product, const PrimeContext& ctx) {
  if (product.factors.empty()) throw DomainError("product region needs at least one factor");
  for (const auto& f : product.factors) check_region(f, ctx);
}

// For every x in the x-extent, the heights y with x in row(y) form one run.
inline bool columns_contiguous(const Region& region) {
  const Interval xs = x_extent(region);
  const Interval ys = y_extent(region);
  for (std::int64_t x = xs.lo(); x <= xs.hi(); ++x) {
    int runs = 0;
    bool inside = false;
    for (std::int64_t y = ys.lo(); y <= ys.hi(); ++y) {
      const bool hit = row_slice(region, y).contains(x);
      if (hit && !inside) ++runs;
      inside = hit;
    }
    if (runs > 1) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::int64_t parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError("bad integer '" + s + "' in " + context);
  }
}

// "2.5" -> (25, 10); "3" -> (3, 1); "7/2" -> (7, 2).
inline std::pair<std::int64_t, std::int64_t> parse_rational(const std::string& s, const std::string& context) {
  if (const auto slash = s.find('/'); slash != std::string::npos)
    return {parse_int(s.substr(0, slash), context), parse_int(s.substr(slash + 1), context)};
  const auto dot = s.find('.');
  if (dot == std::string::npos) return {parse_int(s, context), 1};
  const std::string frac = s.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::string whole = s.substr(0, dot);
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole, context);
  const std::int64_t f = frac.empty() ? 0 : parse_int(frac, context);
  return {w * den + f, den};
}

}  // namespace detail

// Rows from a text file, one "y H K" per line (commas or spaces), '#'
// comments; the row at height y is [H, K]. Heights not listed are empty.
inline ConvexRegion load_convex_rows(std::istream& in) {
  std::vector<std::pair<std::int64_t, Interval>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long y = 0, h = 0, k = 0;
    if (!(fields >> y)) continue;
    if (!(fields >> h >> k)) throw DomainError("convex row file: expected 'y H K', got '" + line + "'");
    rows.emplace_back(y, Interval::closed(h, k));
  }
  if (rows.empty()) return {Interval::none(), {}};
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ConvexRegion region;
  region.y = Interval::closed(rows.front().first, rows.back().first);
  region.rows.assign(static_cast<std::size_t>(region.y.size()), Interval::none());
  for (const auto& [y, row] : rows) region.rows[static_cast<std::size_t>(y - region.y.lo())] = row;
  return region;
}

// box:A,K,B,L  -> [A+1, A+K] x [B+1, B+L]
// disk:b,c,r   -> disk of radius r (decimal or a/b) about (b, c)
// convex:path  -> rows read by load_convex_rows
inline Region parse_region(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw DomainError("region '" + spec + "' lacks a kind prefix");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (kind == "box") {
    const auto f = detail::split(body, ',');
    if (f.size() != 4) throw DomainError("box region needs A,K,B,L");
    const auto A = detail::parse_int(f[0], spec), K = detail::parse_int(f[1], spec);
    const auto B = detail::parse_int(f[2], spec), L = detail::parse_int(f[3], spec);
    if (K < 0 || L < 0) throw DomainError("box lengths must be nonnegative");
    return BoxRegion{{A, K}, {B, L}};
  }
  if (kind == "disk") {
    const auto f = detail::split(body, ',');
    if (f.size() != 3) throw DomainError("disk region needs b,c,r");
    const auto [num, den] = detail::parse_rational(f[2], spec);
    return DiskRegion::make(detail::parse_int(f[0], spec), detail::parse_int(f[1], spec), num, den);
  }
  if (kind == "convex") {
    std::ifstream in(body);
    if (!in) throw DomainError("cannot open convex row file '" + body + "'");
    return load_convex_rows(in);
  }
  throw DomainError("unknown region kind '" + kind + "'");
}

inline std::string describe(const Region& region) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, BoxRegion>) {
          return "box:" + std::to_string(r.x.offset) + "," + std::to_string(r.x.length) + "," +
                 std::to_string(r.y.offset) + "," + std::to_string(r.y.length);
        } else if constexpr (std::is_same_v<T, ConvexRegion>) {
          return "convex:" + std::to_string(r.rows.size()) + "rows@" + std::to_string(r.y.lo());
        } else {
          return "disk:" + std::to_string(r.b) + "," + std::to_string(r.c) + "," + std::to_string(r.radius_num) +
                 "/" + std::to_string(r.radius_den);
        }
      },
      region);
}

}  // namespace modratio
