#pragma once

// Independent reference computations for the tests. Everything here uses
// plain recurrences in long double so it shares no code path with the
// library's log-gamma evaluation.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<long double>;

inline Vec poisson(long double x, std::size_t n_max) {
  Vec p(n_max + 1);
  p[0] = std::exp(-x);
  for (std::size_t n = 1; n <= n_max; ++n) p[n] = p[n - 1] * x / n;
  return p;
}

inline Vec thermal(long double nbar, std::size_t n_max) {
  Vec p(n_max + 1);
  p[0] = 1 / (1 + nbar);
  for (std::size_t n = 1; n <= n_max; ++n) p[n] = p[n - 1] * nbar / (1 + nbar);
  return p;
}

inline Vec squeezed(long double nbar, std::size_t n_max) {
  Vec p(n_max + 1, 0);
  const long double r = nbar / (1 + nbar);
  p[0] = 1 / std::sqrt(1 + nbar);
  for (std::size_t n = 2; n <= n_max; n += 2) p[n] = p[n - 2] * r * (n - 1) / n;
  return p;
}

inline Vec cat(long double x, bool even, std::size_t n_max) {
  Vec p = poisson(x, n_max);
  long double norm = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if ((n % 2 == 0) != even) p[n] = 0;
    norm += p[n];
  }
  for (auto& v : p) v /= norm;
  return p;
}

inline Vec binomial(long double eta, std::size_t m) {
  Vec p(m + 1);
  long double c = 1;
  for (std::size_t n = 0; n <= m; ++n) {
    p[n] = c * std::pow(eta, n) * std::pow(1 - eta, m - n);
    c = c * (m - n) / (n + 1);
  }
  return p;
}

// P(n) = C(n, M) eta^(M+1) (1-eta)^(n-M) for n >= M.
inline Vec negbinomial(long double eta, std::size_t m, std::size_t n_max) {
  Vec p(n_max + 1, 0);
  if (m > n_max) return p;
  p[m] = std::pow(eta, m + 1);
  for (std::size_t n = m + 1; n <= n_max; ++n) p[n] = p[n - 1] * (1 - eta) * n / (n - m);
  return p;
}

// Subtraction from the operator definition: a^l acting on |n> gives weight
// n(n-1)...(n-l+1), then renormalize.
inline Vec subtract(const Vec& p, unsigned l) {
  if (p.size() <= l) return {};
  Vec out(p.size() - l);
  long double norm = 0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    long double w = 1;
    for (unsigned j = 1; j <= l; ++j) w *= n + j;
    out[n] = w * p[n + l];
    norm += out[n];
  }
  for (auto& v : out) v /= norm;
  return out;
}

inline Vec add(const Vec& p, unsigned l) {
  Vec out(p.size() + l, 0);
  long double norm = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    long double w = 1;
    for (unsigned j = 1; j <= l; ++j) w *= n + j;
    out[n + l] = w * p[n];
    norm += out[n + l];
  }
  for (auto& v : out) v /= norm;
  return out;
}

inline long double factorial_moment(const Vec& p, unsigned m) {
  long double s = 0;
  for (std::size_t n = m; n < p.size(); ++n) {
    long double w = 1;
    for (unsigned j = 0; j < m; ++j) w *= n - j;
    s += w * p[n];
  }
  return s;
}

inline long double negative_factorial_moment(const Vec& p, unsigned m) {
  long double s = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    long double w = 1;
    for (unsigned j = 1; j <= m; ++j) w *= n + j;
    s += w * p[n];
  }
  return s;
}

inline long double mean(const Vec& p) { return factorial_moment(p, 1); }

inline long double mgf_M(const Vec& p, long double mu) {
  long double s = 0, pw = 1;
  for (long double v : p) {
    s += pw * v;
    pw *= 1 - mu;
  }
  return s;
}

inline long double mgf_N(const Vec& p, long double lambda) {
  long double s = 0, pw = 1 / (1 + lambda);
  for (long double v : p) {
    s += pw * v;
    pw /= 1 + lambda;
  }
  return s;
}

// Binomial loss: each photon survives with probability eta.
inline Vec attenuate(const Vec& p, long double eta) {
  Vec out(p.size(), 0);
  for (std::size_t m = 0; m < p.size(); ++m) {
    Vec k = binomial(eta, m);
    for (std::size_t n = 0; n <= m; ++n) out[n] += k[n] * p[m];
  }
  return out;
}

inline long double choose(std::size_t n, std::size_t k) {
  long double c = 1;
  for (std::size_t j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

// Random distributions with the given maximum support, normalized.
inline std::vector<std::vector<double>> random_pmfs(std::size_t count, std::size_t max_support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_support);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> p(size(rng));
    double s = 0;
    for (auto& v : p) {
      v = u(rng) < 0.25 ? 0.0 : u(rng);
      s += v;
    }
    if (s == 0) {
      p.back() = 1;
      s = 1;
    }
    for (auto& v : p) v /= s;
    out.push_back(p);
  }
  return out;
}

}  // namespace oracle
