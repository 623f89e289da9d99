#include "photonstat/genfunc.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "photonstat/errors.hpp"
#include "photonstat/special.hpp"

namespace photonstat {

namespace {

using special::ipow;

constexpr unsigned kMaxDerivativeOrder = 6;
constexpr double kSeriesTolerance = 1e-12;

// Sum_n P(n) base^(n + offset), evaluated term by term in log space so that
// |base| > 1 does not overflow ahead of the decaying probabilities.
MgfPoint power_series(const PhotonNumberDistribution& dist, double argument, double base, int offset) {
  const auto probs = dist.probs();
  MgfPoint point{argument, 0.0, true, 0.0};
  if (base == 0.0) {
    // Only the n = 0 term of M survives; N never has base 0.
    point.value = offset == 0 ? probs[0] : 0.0;
    return point;
  }
  const double log_base = std::log(std::fabs(base));
  const bool negative = base < 0.0;
  std::vector<double> magnitudes(probs.size(), 0.0);
  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (probs[n] == 0.0) continue;
    const double power = static_cast<double>(n) + offset;
    const double mag = std::exp(std::log(probs[n]) + power * log_base);
    magnitudes[n] = mag;
    const bool odd = (static_cast<long>(power) % 2) != 0;
    sum += (negative && odd) ? -mag : mag;
  }
  point.value = sum;
  if (dist.finite_support()) return point;
  if (std::fabs(base) <= 1.0) {
    point.truncation_error = dist.tail_bound() * std::pow(std::fabs(base), static_cast<double>(probs.size()) + offset);
    return point;
  }
  const double tail = estimate_tail(magnitudes);
  point.truncation_error = tail;
  point.converged = tail <= kSeriesTolerance * std::max(1.0, std::fabs(sum));
  return point;
}

double cat_ratio(bool even, double numerator_arg, double x) {
  if (x == 0.0) return 1.0;  // even cat at |alpha|^2 = 0 is the vacuum
  if (even) return std::exp(special::log_cosh(numerator_arg) - special::log_cosh(x));
  if (numerator_arg == 0.0) return 0.0;
  const double sign = numerator_arg < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(special::log_sinh(std::fabs(numerator_arg)) - special::log_sinh(x));
}

void require_nonzero(double d, const char* what) {
  if (d == 0.0 || !std::isfinite(d)) throw DomainError(what);
}

// Binomial weights C(m, k) as doubles.
double binom(unsigned m, unsigned k) {
  return std::round(std::exp(special::log_choose(m, k)));
}

// Central m-th difference with step h (offsets m/2 - k, even error expansion).
double central_difference(const std::function<double(double)>& f, double x, unsigned m, double h) {
  double sum = 0.0;
  for (unsigned k = 0; k <= m; ++k) {
    const double offset = 0.5 * m - k;
    const double coeff = ((k % 2) ? -1.0 : 1.0) * binom(m, k);
    sum += coeff * f(x + offset * h);
  }
  return sum / std::pow(h, static_cast<double>(m));
}

double default_step(unsigned order) {
  return 0.4 / std::max(order, 1u);
}

}  // namespace

MgfPoint mgf_M(const PhotonNumberDistribution& dist, double mu) {
  return power_series(dist, mu, 1.0 - mu, 0);
}

MgfPoint mgf_N(const PhotonNumberDistribution& dist, double lambda) {
  if (1.0 + lambda == 0.0) throw DomainError("N(lambda) is undefined at lambda = -1");
  return power_series(dist, lambda, 1.0 / (1.0 + lambda), 1);
}

double closed_form_M(const StateSpec& spec, double mu) {
  spec.validate();
  const double x = spec.intensity;
  const double eta = spec.eta;
  const auto count = static_cast<long>(spec.count);
  switch (spec.family) {
    case Family::Fock:
      return ipow(1.0 - mu, count);
    case Family::Coherent:
      return std::exp(-mu * x);
    case Family::Thermal: {
      const double d = 1.0 + mu * x;
      require_nonzero(d, "thermal M(mu) has a pole at 1 + mu nbar = 0");
      return 1.0 / d;
    }
    case Family::SqueezedVacuum: {
      const double q = 1.0 + 2.0 * mu * x - mu * mu * x;
      if (!(q > 0.0)) throw DomainError("squeezed M(mu) branch point: 1 + 2 mu nbar - mu^2 nbar <= 0");
      return 1.0 / std::sqrt(q);
    }
    case Family::CatEven:
      return cat_ratio(true, (1.0 - mu) * x, x);
    case Family::CatOdd:
      return cat_ratio(false, (1.0 - mu) * x, x);
    case Family::Binomial:
      return ipow(1.0 - eta * mu, count);
    case Family::NegBinomial: {
      const double d = eta + mu * (1.0 - eta);
      require_nonzero(d, "negative binomial M(mu) has a pole at eta + mu (1 - eta) = 0");
      return ipow(eta * (1.0 - mu) / d, count) * (eta / d);
    }
    case Family::AgarwalNegBinomial: {
      const double d = eta + mu * (1.0 - eta);
      require_nonzero(d, "Agarwal M(mu) has a pole at eta + mu (1 - eta) = 0");
      return ipow(eta / d, count + 1);
    }
  }
  throw ParameterError("unknown state family");
}

double closed_form_N(const StateSpec& spec, double lambda) {
  spec.validate();
  const double s = 1.0 + lambda;
  require_nonzero(s, "N(lambda) has a pole at lambda = -1");
  const double x = spec.intensity;
  const double eta = spec.eta;
  const auto count = static_cast<long>(spec.count);
  switch (spec.family) {
    case Family::Fock:
      return ipow(s, -(count + 1));
    case Family::Coherent:
      return std::exp(-lambda * x / s) / s;
    case Family::Thermal: {
      const double d = 1.0 + lambda * (x + 1.0);
      require_nonzero(d, "thermal N(lambda) has a pole at 1 + lambda (nbar + 1) = 0");
      return 1.0 / d;
    }
    case Family::SqueezedVacuum: {
      const double q = 1.0 + lambda * (2.0 + lambda) / (s * s) * x;
      if (!(q > 0.0)) throw DomainError("squeezed N(lambda) branch point");
      return 1.0 / (s * std::sqrt(q));
    }
    case Family::CatEven:
      return cat_ratio(true, x / s, x) / s;
    case Family::CatOdd:
      return cat_ratio(false, x / s, x) / s;
    case Family::Binomial:
      return ipow(1.0 - eta * lambda / s, count) / s;
    case Family::NegBinomial: {
      const double d = lambda + eta;
      require_nonzero(d, "negative binomial N(lambda) has a pole at lambda + eta = 0");
      return ipow(eta / d, count + 1);
    }
    case Family::AgarwalNegBinomial: {
      const double d = lambda + eta;
      require_nonzero(d, "Agarwal N(lambda) has a pole at lambda + eta = 0");
      return ipow(eta * s / d, count + 1) / s;
    }
  }
  throw ParameterError("unknown state family");
}

DerivativeEstimate richardson_derivative(const std::function<double(double)>& f, double x,
                                         unsigned order, double base_step) {
  if (order == 0) return {f(x), 0.0, true};
  // Extrapolation tableau over steps h, h/2, h/4, ...; the central stencils
  // have an error expansion in even powers of h. Stop once the diagonal
  // starts to drift (round-off takes over) and keep the best estimate.
  constexpr int kRows = 10;
  double h = (base_step > 0.0 ? base_step : default_step(order)) * (1.0 + std::fabs(x));
  std::array<std::array<double, kRows>, kRows> table{};
  DerivativeEstimate best{0.0, std::numeric_limits<double>::infinity(), false};
  int row = 0;
  for (int attempt = 0; attempt < 2 * kRows && row < kRows; ++attempt, h *= 0.5) {
    double d;
    try {
      d = central_difference(f, x, order, h);
    } catch (const DomainError&) {
      row = 0;  // stencil crossed a singularity: restart with a smaller step
      continue;
    }
    if (!std::isfinite(d)) {
      row = 0;
      continue;
    }
    table[row][0] = d;
    double factor = 1.0;
    for (int j = 1; j <= row; ++j) {
      factor *= 4.0;
      table[row][j] = (factor * table[row][j - 1] - table[row - 1][j - 1]) / (factor - 1.0);
      const double err = std::max(std::fabs(table[row][j] - table[row][j - 1]),
                                  std::fabs(table[row][j] - table[row - 1][j - 1]));
      if (err <= best.error) {
        best.error = err;
        best.value = table[row][j];
      }
    }
    if (row > 0 && std::fabs(table[row][row] - table[row - 1][row - 1]) >= 2.0 * best.error) break;
    ++row;
  }
  best.converged = std::isfinite(best.value) && best.error <= 2e-7 * std::max(1.0, std::fabs(best.value));
  return best;
}

DerivativeEstimate moments_from_closed_form(const StateSpec& spec, MgfKind kind, unsigned m) {
  if (m > kMaxDerivativeOrder) throw ParameterError("differentiation order is capped at 6");
  auto f = [&](double arg) { return closed_form(spec, kind, arg); };
  DerivativeEstimate est = richardson_derivative(f, 0.0, m);
  if (m % 2 == 1) est.value = -est.value;
  return est;
}

double raw_moment(const PhotonNumberDistribution& dist, unsigned m) {
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (probs[n] == 0.0) continue;
    sum += std::pow(static_cast<double>(n), static_cast<double>(m)) * probs[n];
  }
  return sum;
}

DerivativeEstimate probability_via_derivative(const StateSpec& spec, unsigned n) {
  if (n > kMaxDerivativeOrder) throw ParameterError("differentiation order is capped at 6");
  auto f = [&](double mu) { return closed_form_M(spec, mu); };
  DerivativeEstimate est = richardson_derivative(f, 1.0, n);
  const double scale = std::exp(-special::log_factorial(n)) * ((n % 2 == 1) ? -1.0 : 1.0);
  est.value *= scale;
  est.error *= std::fabs(scale);
  return est;
}

}  // namespace photonstat
