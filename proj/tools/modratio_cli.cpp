// Command-line front end. Exit codes: 0 success, 1 usage, 2 computation
// error (precision/size), 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modratio/harness/config.hpp"
#include "modratio/harness/verify.hpp"
#include "modratio/modratio.hpp"

namespace {

using namespace modratio;

constexpr int kUsage = 1;
constexpr int kComputation = 2;
constexpr int kVerifyFailed = 3;

struct Common {
  std::int64_t p = 0;
  int n = 0;
  std::string coeffs;
  std::vector<std::string> regions;
  unsigned workers = default_workers();
  bool verbose = false;
};

void add_prime(CLI::App* cmd, Common& c) { cmd->add_option("--p", c.p, "odd prime modulus")->required(); }

void add_workers(CLI::App* cmd, Common& c) {
  cmd->add_option("--workers", c.workers, "worker threads (default from MODRATIO_WORKERS)");
}

// One region per factor; a single region is used for every factor.
ProductRegion product_from(const std::vector<std::string>& specs, std::size_t n) {
  if (specs.empty()) throw DomainError("at least one --region is required");
  if (specs.size() != 1 && specs.size() != n)
    throw DomainError("give one --region or exactly n of them");
  ProductRegion out;
  for (std::size_t j = 0; j < n; ++j) out.factors.push_back(parse_region(specs[specs.size() == 1 ? 0 : j]));
  return out;
}

BoxRegion single_box(const std::vector<std::string>& specs) {
  if (specs.size() != 1) throw DomainError("expected exactly one --region");
  const Region r = parse_region(specs[0]);
  const auto* box = std::get_if<BoxRegion>(&r);
  if (box == nullptr) throw DomainError("this command needs a box region");
  return *box;
}

std::string complex_str(const Complex& z) {
  return harness::format_real(z.real()) + " " + harness::format_real(z.imag());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting solutions of sums of modular ratios"};
  app.require_subcommand(1);
  Common c;

  auto* count = app.add_subcommand("count", "count solutions of sum a_j x_j/y_j = a0 (mod p)");
  std::string method = "fast";
  add_prime(count, c);
  count->add_option("--n", c.n, "number of ratios (defaults to the coefficient count)");
  count->add_option("--coeffs", c.coeffs, "a0,a1,...,an")->required();
  count->add_option("--region", c.regions, "region per factor (box:A,K,B,L | disk:b,c,r | convex:path)")->required();
  count->add_option("--method", method, "fast, brute or coprime")->check(CLI::IsMember({"fast", "brute", "coprime"}));
  count->add_flag("--verbose", c.verbose, "print main term, residual and skipped rows");
  add_workers(count, c);

  auto* sum = app.add_subcommand("sum", "ratio double sum over a region");
  std::int64_t a = 1;
  add_prime(sum, c);
  sum->add_option("--a", a, "multiplier a (nonzero mod p)")->required();
  sum->add_option("--region", c.regions, "region")->required();

  auto* moment = app.add_subcommand("moment", "second moment over a of the ratio sum on a box");
  add_prime(moment, c);
  moment->add_option("--region", c.regions, "box region")->required();
  add_workers(moment, c);

  auto* lemma1 = app.add_subcommand("lemma1", "cross-ratio count on a box against its main term");
  add_prime(lemma1, c);
  lemma1->add_option("--region", c.regions, "box region (used for both pairs)")->required();

  auto* lemma2 = app.add_subcommand("lemma2", "count w in [B+1,B+L] with 1 <= inverse(w) <= M");
  std::int64_t B = 0, L = 1, M = 0;
  add_prime(lemma2, c);
  lemma2->add_option("--B", B)->required();
  lemma2->add_option("--L", L)->required();
  lemma2->add_option("--M", M)->required();

  auto* kloost = app.add_subcommand("kloosterman", "sum of e_p(lambda/u) over u in [lo, hi]");
  std::int64_t lambda = 1, lo = 1, hi = 0;
  add_prime(kloost, c);
  kloost->add_option("--lambda", lambda)->required();
  kloost->add_option("--lo", lo);
  kloost->add_option("--hi", hi, "defaults to p-1");

  std::string shape = "ball:0.4";
  int depth = -1;
  std::uint64_t seed = 0x5eed;
  auto* decompose = app.add_subcommand("decompose", "dump dyadic layers as 'level u1 ... u_2n'");
  decompose->add_option("--n", c.n, "half the dimension")->required();
  decompose->add_option("--shape", shape, "ball:r | ellipsoid:r1,... | cube | halfspace-cap:w...,t | empty");
  decompose->add_option("--M", depth, "depth")->required();
  decompose->add_option("--p", c.p, "prime used to validate the grid shift")->required();
  decompose->add_option("--seed", seed);
  bool summary_only = false;
  decompose->add_flag("--summary", summary_only, "print layer sizes only");

  auto* blowup = app.add_subcommand("blowup", "solutions inside the blow-up p*Omega");
  bool exact = false;
  add_prime(blowup, c);
  blowup->add_option("--coeffs", c.coeffs, "a0,a1,...,an")->required();
  blowup->add_option("--shape", shape);
  blowup->add_option("--M", depth, "override the depth");
  blowup->add_option("--seed", seed);
  blowup->add_flag("--exact", exact, "also run the exact enumeration");
  add_workers(blowup, c);

  auto* sweep = app.add_subcommand("sweep", "cubic-box sweep over primes, CSV output");
  std::string config_path, primes, coeff_policy;
  std::optional<int> sw_n;
  std::optional<double> theta, eps;
  std::optional<std::uint64_t> sw_seed;
  std::optional<unsigned> sw_workers;
  std::string out;
  bool timing = false;
  sweep->add_option("--config", config_path, "key=value config file; flags override it");
  sweep->add_option("--primes", primes, "comma-separated primes");
  sweep->add_option("--n", sw_n);
  sweep->add_option("--theta", theta);
  sweep->add_option("--eps", eps);
  sweep->add_option("--seed", sw_seed);
  sweep->add_option("--coeffs", coeff_policy, "fixed, random or a0,a1,...,an");
  sweep->add_option("--workers", sw_workers);
  sweep->add_option("--out", out, "CSV path (stdout when absent)");
  sweep->add_flag("--timing", timing, "record runtime_ms (makes output nondeterministic)");

  auto* verify = app.add_subcommand("verify", "run the identity, oracle and envelope suite");
  bool quick = false;
  verify->add_flag("--quick", quick, "smaller instance counts");
  add_workers(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*count) {
      const PrimeContext ctx(c.p);
      const auto coeffs = CoefficientVector::parse(c.coeffs, ctx);
      if (c.n != 0 && static_cast<std::size_t>(c.n) != coeffs.n()) throw DomainError("--n disagrees with --coeffs");
      const auto regions = product_from(c.regions, coeffs.n());
      CountResult r;
      if (method == "brute") {
        r.count = count_bruteforce(coeffs, regions, ctx);
      } else if (method == "coprime") {
        r = coprime_count(coeffs, regions, ctx, c.workers);
      } else {
        r = count_fast(coeffs, regions, ctx, c.workers);
      }
      std::cout << r.count << '\n';
      if (c.verbose)
        std::cout << "main_term " << harness::format_real(r.main_term) << "\nresidual "
                  << harness::format_real(r.residual) << "\nskipped_rows " << r.skipped_rows << '\n';
    } else if (*sum) {
      const PrimeContext ctx(c.p);
      if (c.regions.size() != 1) throw DomainError("expected exactly one --region");
      const auto s = ratio_double_sum_region(a, parse_region(c.regions[0]), ctx);
      std::cout << complex_str(s.value) << '\n' << "terms " << s.terms << "\nskipped_rows " << s.skipped_rows << '\n';
    } else if (*moment) {
      const PrimeContext ctx(c.p);
      const auto box = single_box(c.regions);
      const double m = second_moment_over_a(box.x, box.y, ctx, c.workers);
      const auto T = cross_ratio_count(box.x, box.y, box.x, box.y, ctx);
      const auto KL = static_cast<double>(lattice_count_nonzero_y(box, ctx));
      std::cout << harness::format_real(m) << '\n'
                << "parseval " << harness::format_real(static_cast<double>(c.p) * static_cast<double>(T) - KL * KL)
                << '\n';
    } else if (*lemma1) {
      const PrimeContext ctx(c.p);
      const auto box = single_box(c.regions);
      const auto T = cross_ratio_count(box.x, box.y, box.x, box.y, ctx);
      std::cout << T << '\n'
                << "deviation " << harness::format_real(cross_ratio_deviation(T, box.x, box.y, box.x, box.y, ctx))
                << '\n';
    } else if (*lemma2) {
      const PrimeContext ctx(c.p);
      std::cout << inverse_concentration_count(B, L, M, ctx) << '\n';
    } else if (*kloost) {
      const PrimeContext ctx(c.p);
      if (hi == 0) hi = c.p - 1;
      const auto s = kloosterman_interval(lambda, Interval::closed(lo, hi), ctx);
      std::cout << complex_str(s.value) << '\n';
    } else if (*decompose) {
      const auto omega = parse_shape(shape, 2 * c.n);
      const auto layers = dyadic_layers(omega, depth, make_shift(omega.dim, c.p, depth, seed));
      if (summary_only) {
        for (auto s : layers.layer_sizes()) std::cout << s << '\n';
      } else {
        for (const auto& layer : layers.layers)
          for (const auto& cube : layer) {
            std::cout << cube.level;
            for (auto u : cube.u) std::cout << ' ' << u;
            std::cout << '\n';
          }
      }
    } else if (*blowup) {
      const PrimeContext ctx(c.p);
      const auto coeffs = CoefficientVector::parse(c.coeffs, ctx);
      const auto omega = parse_shape(shape, static_cast<int>(2 * coeffs.n()));
      const auto r = count_in_blowup(coeffs, omega, ctx, depth, seed, c.workers);
      if (!r.warning.empty()) std::cerr << "warning: " << r.warning << '\n';
      std::cout << "M " << r.M << "\nlayer_sum " << r.layer_sum << "\nmain_term " << harness::format_real(r.main_term)
                << "\ngap_bound " << harness::format_real(r.gap_bound) << "\nlayers";
      for (auto s : r.layer_sizes) std::cout << ' ' << s;
      std::cout << '\n';
      if (exact) std::cout << "exact " << exact_blowup_count(coeffs, omega, ctx, c.workers) << '\n';
    } else if (*sweep) {
      harness::SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw DomainError("cannot read " + config_path);
        harness::apply_settings(cfg, harness::read_settings(in));
      }
      if (!primes.empty()) harness::apply_setting(cfg, "primes", primes);
      if (sw_n) cfg.n = *sw_n;
      if (theta) cfg.theta = *theta;
      if (eps) cfg.eps = *eps;
      if (sw_seed) cfg.seed = *sw_seed;
      if (!coeff_policy.empty()) harness::apply_setting(cfg, "coeffs", coeff_policy);
      if (sw_workers) cfg.workers = std::max(1u, *sw_workers);
      if (!out.empty()) cfg.out = out;
      if (timing) cfg.timing = true;
      const auto rows = harness::run_sweep(cfg);
      if (cfg.out.empty()) harness::write_csv(std::cout, rows);
      const auto fit = harness::fit_exponent(rows);
      std::cerr << "rows " << rows.size() << ", max ratio " << fit.max_ratio << ", slope "
                << (fit.defined() ? std::to_string(fit.slope) : std::string("undefined")) << '\n';
    } else if (*verify) {
      harness::VerifyOptions opt;
      opt.quick = quick;
      opt.workers = c.workers;
      bool all = true;
      for (const auto& check : harness::all_checks()) {
        const auto r = check(opt);
        std::cout << harness::format_check(r) << std::endl;
        all = all && r.passed;
      }
      return all ? 0 : kVerifyFailed;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputation;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
