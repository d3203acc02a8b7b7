#pragma once

#include <cstdint>
#include <string>

namespace palloc {

/// Exact nonnegative rational, used for approximation factors and means.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// C(n, k), saturating at cap instead of overflowing.
std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap);

/// num/den as a decimal string truncated toward zero to `digits` places.
/// Requires num >= 0, den > 0.
std::string decimal_trunc(std::int64_t num, std::int64_t den, int digits);

/// num/den rounded half-up to two decimal places as a string.
std::string decimal_round2(std::int64_t num, std::int64_t den);

}  // namespace palloc
