#pragma once

// Line-oriented `key=value` configuration. Blank lines and `#` comments are
// ignored; later keys win.

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <string>

#include "modratio/errors.hpp"
#include "modratio/geometry.hpp"
#include "modratio/harness/sweep.hpp"

namespace modratio::harness {

using Settings = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  const auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  const auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

inline Settings read_settings(std::istream& in) {
  Settings out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& context) {
  std::vector<std::int64_t> out;
  if (trim(s).empty()) return out;
  for (const auto& f : modratio::detail::split(s, ',')) out.push_back(modratio::detail::parse_int(trim(f), context));
  return out;
}

inline void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value) {
  auto as_double = [&] {
    try {
      return std::stod(value);
    } catch (const std::exception&) {
      throw DomainError("bad number for " + key + ": '" + value + "'");
    }
  };
  auto as_int = [&] { return modratio::detail::parse_int(value, key); };
  if (key == "primes") {
    cfg.primes = parse_int_list(value, key);
  } else if (key == "prime_min") {
    cfg.prime_min = as_int();
  } else if (key == "prime_max") {
    cfg.prime_max = as_int();
  } else if (key == "prime_count") {
    cfg.prime_count = static_cast<int>(as_int());
  } else if (key == "n") {
    cfg.n = static_cast<int>(as_int());
  } else if (key == "theta") {
    cfg.theta = as_double();
  } else if (key == "eps") {
    cfg.eps = as_double();
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(as_int());
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(std::max<std::int64_t>(1, as_int()));
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "timing") {
    cfg.timing = value == "1" || value == "true" || value == "yes";
  } else if (key == "coeffs") {
    if (value == "fixed" || value == "random") {
      cfg.coeff_policy = value;
    } else {
      cfg.coeff_policy = "fixed";
      cfg.fixed_coeffs = parse_int_list(value, key);
    }
  } else {
    throw DomainError("unknown config key '" + key + "'");
  }
}

inline void apply_settings(SweepConfig& cfg, const Settings& settings) {
  for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
}

}  // namespace modratio::harness
