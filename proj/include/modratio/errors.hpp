#pragma once

#include <stdexcept>
#include <string>

namespace modratio {

// Invalid argument in the mathematical sense: zero divisor, composite
// modulus, interval outside [0, p], and so on.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An enumeration or transform would exceed its configured budget.
class SizeError : public std::length_error {
public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

// Floating-point accumulation drifted too far from an integer to round
// safely.
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modratio
