#include "palloc/numeric.hpp"

#include <stdexcept>

namespace palloc {

std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // c stays <= cap after every step, so the 128-bit product cannot overflow.
  __int128 c = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > cap) return cap;
  }
  return static_cast<std::int64_t>(c);
}

std::string decimal_trunc(std::int64_t num, std::int64_t den, int digits) {
  if (den <= 0 || num < 0) throw std::invalid_argument("decimal_trunc: bad fraction");
  std::string out = std::to_string(num / den);
  if (digits <= 0) return out;
  out.push_back('.');
  std::int64_t r = num % den;
  for (int i = 0; i < digits; ++i) {
    r *= 10;
    out.push_back(static_cast<char>('0' + r / den));
    r %= den;
  }
  return out;
}

std::string decimal_round2(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) throw std::invalid_argument("decimal_round2: bad fraction");
  const std::int64_t scaled = (100 * num + den / 2) / den;
  std::string out = std::to_string(scaled / 100);
  out.push_back('.');
  out.push_back(static_cast<char>('0' + scaled % 100 / 10));
  out.push_back(static_cast<char>('0' + scaled % 10));
  return out;
}

}  // namespace palloc
