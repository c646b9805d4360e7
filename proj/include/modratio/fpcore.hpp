#pragma once

// Arithmetic in the prime field F_p: inverses, centred residues, additive
// characters e_p(w) = exp(2 pi i w / p), and a few integer helpers
// (Moebius function, divisor counts, small multiples of a residue).

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "modratio/errors.hpp"

namespace modratio {

using Complex = std::complex<double>;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

// Deterministic Miller-Rabin; the first twelve prime bases are a complete
// witness set below 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// An odd prime p together with optional length-p tables of inverses and
// roots of unity. Immutable after construction; copies share the tables.
class PrimeContext {
public:
  // Tables are only built up to this modulus; beyond it inverses fall back to
  // the extended Euclidean algorithm and characters to std::polar.
  static constexpr std::int64_t kTableLimit = std::int64_t{1} << 24;

  explicit PrimeContext(std::int64_t p, bool build_tables = true) : p_(p) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
      throw DomainError("modulus " + std::to_string(p) + " is not an odd prime");
    if (p > (std::int64_t{1} << 62)) throw DomainError("modulus exceeds 62 bits");
    if (build_tables && p <= kTableLimit) {
      auto inv = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(p), 0);
      auto& t = *inv;
      t[1] = 1;
      // inv(i) = -(p / i) * inv(p mod i)
      for (std::int64_t i = 2; i < p; ++i)
        t[i] = (p - (p / i) * t[p % i] % p) % p;
      inverses_ = std::move(inv);

      auto roots = std::make_shared<std::vector<Complex>>(static_cast<std::size_t>(p));
      auto& r = *roots;
      r[0] = Complex(1.0, 0.0);
      const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
      for (std::int64_t w = 1; 2 * w < p; ++w) {
        const double angle = step * static_cast<double>(w);
        r[w] = Complex(std::cos(angle), std::sin(angle));
        r[p - w] = std::conj(r[w]);
      }
      roots_ = std::move(roots);
    }
  }

  std::int64_t p() const { return p_; }
  bool has_tables() const { return inverses_ != nullptr; }

  std::int64_t reduce(std::int64_t a) const {
    const std::int64_t r = a % p_;
    return r < 0 ? r + p_ : r;
  }

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<__int128>(reduce(a)) * reduce(b) % p_);
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) + reduce(b)); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(reduce(a) - reduce(b)); }

  // Inverse of a reduced nonzero residue; no checks.
  std::int64_t inverse_unchecked(std::int64_t a) const {
    if (inverses_) return (*inverses_)[static_cast<std::size_t>(a)];
    return euclid_inverse(a);
  }

  // exp(2 pi i r / p) for a reduced residue r.
  Complex root_unchecked(std::int64_t r) const {
    if (roots_) return (*roots_)[static_cast<std::size_t>(r)];
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p_));
  }

private:
  std::int64_t euclid_inverse(std::int64_t a) const {
    std::int64_t old_r = a, r = p_, old_s = 1, s = 0;
    while (r != 0) {
      const std::int64_t q = old_r / r;
      std::int64_t tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
    }
    return reduce(old_s);
  }

  std::int64_t p_;
  std::shared_ptr<const std::vector<std::int64_t>> inverses_;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

inline std::int64_t mod_inverse(std::int64_t a, const PrimeContext& ctx) {
  const std::int64_t r = ctx.reduce(a);
  if (r == 0) throw DomainError("zero has no inverse");
  return ctx.inverse_unchecked(r);
}

// Representative w of a residue class with |w| < p/2.
struct CenteredResidue {
  std::int64_t value = 0;
  friend bool operator==(const CenteredResidue&, const CenteredResidue&) = default;
};

inline CenteredResidue centered(std::int64_t residue, const PrimeContext& ctx) {
  const std::int64_t r = ctx.reduce(residue);
  return {2 * r > ctx.p() ? r - ctx.p() : r};
}

// w = u / v (mod p), centred.
inline CenteredResidue centered_residue(std::int64_t u, std::int64_t v, const PrimeContext& ctx) {
  const std::int64_t vr = ctx.reduce(v);
  if (vr == 0) throw DomainError("centered_residue: denominator is divisible by p");
  return centered(ctx.mul(u, ctx.inverse_unchecked(vr)), ctx);
}

inline Complex e_p(std::int64_t w, const PrimeContext& ctx) { return ctx.root_unchecked(ctx.reduce(w)); }

// Sum of e_p(c x) for x = lo..hi, in closed form. Empty when lo > hi.
inline Complex geometric_char_sum(std::int64_t c, std::int64_t lo, std::int64_t hi, const PrimeContext& ctx) {
  if (lo > hi) return {0.0, 0.0};
  const std::int64_t cr = ctx.reduce(c);
  const std::int64_t terms = hi - lo + 1;
  if (cr == 0) return {static_cast<double>(terms), 0.0};
  // Whole periods cancel.
  const std::int64_t m = terms % ctx.p();
  if (m == 0) return {0.0, 0.0};
  const Complex start = ctx.root_unchecked(ctx.mul(cr, lo));
  const Complex numer = Complex(1.0, 0.0) - ctx.root_unchecked(ctx.mul(cr, m));
  const Complex denom = Complex(1.0, 0.0) - ctx.root_unchecked(cr);
  return start * numer / denom;
}

inline int mobius(std::int64_t m) {
  if (m <= 0) throw DomainError("mobius: argument must be positive");
  int sign = 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    m /= q;
    if (m % q == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

inline std::int64_t divisor_count(std::int64_t m) {
  if (m == 0) throw DomainError("divisor_count: argument must be nonzero");
  m = std::llabs(m);
  std::int64_t count = 1;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    count *= e + 1;
  }
  if (m > 1) count *= 2;
  return count;
}

struct SmallPair {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const SmallPair&, const SmallPair&) = default;
};

// Among 1 <= u <= U, the smallest u minimising |v| where v is the centred
// residue of u*B. Pigeonhole gives |v| <= ceil(p / U).
inline SmallPair find_small_uv(std::int64_t B, std::int64_t U, const PrimeContext& ctx) {
  if (U < 1 || U >= ctx.p()) throw DomainError("find_small_uv: need 1 <= U < p");
  const std::int64_t b = ctx.reduce(B);
  SmallPair best{1, centered(b, ctx).value};
  std::int64_t acc = b;
  for (std::int64_t u = 2; u <= U && best.v != 0; ++u) {
    acc += b;
    if (acc >= ctx.p()) acc -= ctx.p();
    const std::int64_t v = centered(acc, ctx).value;
    if (std::llabs(v) < std::llabs(best.v)) best = {u, v};
  }
  return best;
}

}  // namespace modratio
