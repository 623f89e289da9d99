#pragma once

#include <cstddef>
#include <vector>

namespace photonstat::special {

/// log(n!) for integer n >= 0.
double log_factorial(std::size_t n);

/// log C(n, k); -inf when k > n.
double log_choose(std::size_t n, std::size_t k);

/// log of the falling factorial n (n-1) ... (n-m+1) = n!/(n-m)!; -inf when m > n.
double log_falling(std::size_t n, std::size_t m);

/// log of the rising factorial (n+1)(n+2)...(n+m) = (n+m)!/n!.
double log_rising(std::size_t n, std::size_t m);

/// Laguerre polynomial L_k(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
double laguerre(unsigned k, double x);

/// x^n for integer n, with 0^0 = 1.
double ipow(double x, long n);

/// Numerically safe log(cosh x) and log(sinh x) for x >= 0 (sinh requires x > 0).
double log_cosh(double x);
double log_sinh(double x);

}  // namespace photonstat::special
