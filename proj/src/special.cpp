#include "photonstat/special.hpp"

#include <cmath>
#include <limits>

namespace photonstat::special {

double log_factorial(std::size_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(std::size_t n, std::size_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_falling(std::size_t n, std::size_t m) {
  if (m > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(n - m);
}

double log_rising(std::size_t n, std::size_t m) {
  return log_factorial(n + m) - log_factorial(n);
}

double laguerre(unsigned k, double x) {
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 - x;
  for (unsigned j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double ipow(double x, long n) {
  if (n == 0) return 1.0;
  if (n < 0) return 1.0 / ipow(x, -n);
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double log_cosh(double x) {
  x = std::fabs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

double log_sinh(double x) {
  // log(sinh x) = x + log(1 - e^{-2x}) - log 2
  return x + std::log(-std::expm1(-2.0 * x)) - std::log(2.0);
}

}  // namespace photonstat::special
