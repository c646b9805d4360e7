#pragma once

// Parameter sweeps over primes for the cubic-box count: every grid point
// counts solutions in [1,H]^(2n) with H = floor(p^theta) and compares the
// count with H^(2n)/p against the envelope p^(n/2-1) H^(n/2+1) p^eps.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modratio/counting.hpp"
#include "modratio/errors.hpp"
#include "modratio/fpcore.hpp"
#include "modratio/parallel.hpp"

namespace modratio::harness {

struct SweepConfig {
  std::vector<std::int64_t> primes;
  // Used when `primes` is empty: prime_count primes spread over the range.
  std::int64_t prime_min = 0;
  std::int64_t prime_max = 0;
  int prime_count = 0;

  int n = 3;
  double theta = 0.7;
  // "fixed" uses fixed_coeffs (a0, a1, ..., an; default 0,1,...,1);
  // "random" draws a0 in [0,p) and a_j in [1,p) from a per-prime seed.
  std::string coeff_policy = "fixed";
  std::vector<std::int64_t> fixed_coeffs;
  double eps = 0.2;
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  std::string out;
  bool timing = false;  // runtime_ms is 0 unless set, keeping output reproducible

  void validate() const {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
    if (eps < 0.0) throw DomainError("eps must be nonnegative");
    if (n < 1) throw DomainError("n must be positive");
    if (coeff_policy != "fixed" && coeff_policy != "random")
      throw DomainError("coefficient policy must be 'fixed' or 'random'");
    if (!fixed_coeffs.empty() && fixed_coeffs.size() != static_cast<std::size_t>(n) + 1)
      throw DomainError("fixed coefficients must list a0..an");
    for (auto p : primes)
      if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw DomainError(std::to_string(p) + " is not an odd prime");
  }

  std::vector<std::int64_t> grid() const {
    if (!primes.empty() || prime_count <= 0) return primes;
    std::vector<std::int64_t> out;
    for (int i = 0; i < prime_count; ++i) {
      const double t = prime_count == 1 ? 0.0 : static_cast<double>(i) / (prime_count - 1);
      auto q = static_cast<std::int64_t>(std::llround(prime_min + t * static_cast<double>(prime_max - prime_min)));
      q = std::max<std::int64_t>(q, 3);
      while (!is_prime(static_cast<std::uint64_t>(q))) ++q;
      if (out.empty() || out.back() != q) out.push_back(q);
    }
    return out;
  }
};

struct SweepRow {
  std::int64_t p = 0;
  int n = 0;
  std::string region;
  std::int64_t a0 = 0;
  std::string coeffs;  // a_1;...;a_n
  std::int64_t count = 0;
  double main_term = 0.0;
  double abs_error = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  std::string flags;
  double runtime_ms = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline const char* kSweepHeader = "p,n,region,a0,coeffs,count,main_term,abs_error,envelope,ratio,flags,runtime_ms";

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << r.p << ',' << r.n << ',' << r.region << ',' << r.a0 << ',' << r.coeffs << ',' << r.count << ','
        << format_real(r.main_term) << ',' << format_real(r.abs_error) << ',' << format_real(r.envelope) << ','
        << format_real(r.ratio) << ',' << r.flags << ',' << format_real(r.runtime_ms) << '\n';
  }
}

inline std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) throw DomainError("sweep CSV header mismatch");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = modratio::detail::split(line, ',');
    if (f.size() != 12) throw DomainError("sweep CSV row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    r.p = std::stoll(f[0]);
    r.n = std::stoi(f[1]);
    r.region = f[2];
    r.a0 = std::stoll(f[3]);
    r.coeffs = f[4];
    r.count = std::stoll(f[5]);
    r.main_term = std::strtod(f[6].c_str(), nullptr);
    r.abs_error = std::strtod(f[7].c_str(), nullptr);
    r.envelope = std::strtod(f[8].c_str(), nullptr);
    r.ratio = std::strtod(f[9].c_str(), nullptr);
    r.flags = f[10];
    r.runtime_ms = std::strtod(f[11].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

// p^(n/2-1) H^(n/2+1) p^eps
inline double cubic_box_envelope(std::int64_t p, std::int64_t H, int n, double eps) {
  const auto pd = static_cast<double>(p);
  return std::pow(pd, n / 2.0 - 1.0) * std::pow(static_cast<double>(H), n / 2.0 + 1.0) * std::pow(pd, eps);
}

inline CoefficientVector sweep_coefficients(const SweepConfig& cfg, const PrimeContext& ctx) {
  if (cfg.coeff_policy == "random") {
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(ctx.p()),
                      static_cast<std::uint64_t>(cfg.n)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::int64_t> any(0, ctx.p() - 1), nonzero(1, ctx.p() - 1);
    std::vector<std::int64_t> a(static_cast<std::size_t>(cfg.n));
    const std::int64_t a0 = any(rng);
    for (auto& v : a) v = nonzero(rng);
    return CoefficientVector::make(a0, a, ctx);
  }
  if (!cfg.fixed_coeffs.empty())
    return CoefficientVector::make(cfg.fixed_coeffs[0],
                                   std::vector<std::int64_t>(cfg.fixed_coeffs.begin() + 1, cfg.fixed_coeffs.end()), ctx);
  return CoefficientVector::make(0, std::vector<std::int64_t>(static_cast<std::size_t>(cfg.n), 1), ctx);
}

inline SweepRow run_grid_point(const SweepConfig& cfg, std::int64_t p) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.p = p;
  row.n = cfg.n;
  const PrimeContext ctx(p);
  const auto H = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(p), cfg.theta) + 1e-9));
  row.region = "cube:H=" + std::to_string(H);
  const CoefficientVector coeffs = sweep_coefficients(cfg, ctx);
  row.a0 = coeffs.a0;
  for (std::size_t j = 0; j < coeffs.n(); ++j) row.coeffs += (j ? ";" : "") + std::to_string(coeffs.a[j]);
  std::vector<std::string> flags;
  const double threshold = std::pow(static_cast<double>(p), static_cast<double>(cfg.n) / (3.0 * cfg.n - 2.0));
  if (static_cast<double>(H) < threshold) flags.emplace_back("below_nontrivial_range=true");
  if (cfg.coeff_policy == "random") flags.push_back("seed=" + std::to_string(cfg.seed));
  row.envelope = cubic_box_envelope(p, H, cfg.n, cfg.eps);
  try {
    ProductRegion regions;
    for (int j = 0; j < cfg.n; ++j) regions.factors.emplace_back(BoxRegion{{0, H}, {0, H}});
    const CountResult r = count_fast(coeffs, regions, ctx, 1);
    row.count = r.count;
    row.main_term = r.main_term;
    row.abs_error = std::abs(static_cast<double>(r.count) - r.main_term);
    row.ratio = row.abs_error / row.envelope;
  } catch (const PrecisionError&) {
    flags.emplace_back("error=precision");
  } catch (const SizeError&) {
    flags.emplace_back("error=size");
  }
  for (std::size_t i = 0; i < flags.size(); ++i) row.flags += (i ? ";" : "") + flags[i];
  if (cfg.timing)
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

// Grid points run concurrently; rows come back in grid order.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto primes = cfg.grid();
  std::vector<SweepRow> rows(primes.size());
  parallel_for(0, static_cast<std::int64_t>(primes.size()), cfg.workers, [&](std::int64_t i) {
    rows[static_cast<std::size_t>(i)] = run_grid_point(cfg, primes[static_cast<std::size_t>(i)]);
  });
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw DomainError("cannot write " + cfg.out);
    write_csv(out, rows);
  }
  return rows;
}

}  // namespace modratio::harness
