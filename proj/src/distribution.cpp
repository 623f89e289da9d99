#include "photonstat/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "photonstat/errors.hpp"
#include "photonstat/special.hpp"

namespace photonstat {

namespace {

constexpr std::size_t kMaxTruncation = std::size_t{1} << 24;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Describes an infinite-support family for truncation certification.
struct SeriesFamily {
  // log P(n); -inf for structural zeros.
  std::function<double(std::size_t)> log_pmf;
  // Upper bound on P(k+2)/P(k) valid for every k >= first (k in the
  // support). A value >= 1 means "not certifiable at this cut".
  std::function<double(std::size_t)> two_step_ratio;
};

double exp_or_zero(double log_value) {
  return log_value == -kInf ? 0.0 : std::exp(log_value);
}

// log (n+1)(n+2)...(n+K): the weight of the K-th negative factorial moment.
double log_weight(std::size_t n) {
  return special::log_rising(n, kCertifiedMomentOrder);
}

PhotonNumberDistribution certify(const SeriesFamily& family, double mean, double tail_epsilon) {
  std::size_t n_max = std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(8.0 * (mean + 1.0))));
  while (n_max <= kMaxTruncation) {
    const double ratio = family.two_step_ratio(n_max + 1);
    // w(k+2)/w(k) decreases in k, so its value at the cut bounds the rest.
    const double weight_ratio = std::exp(log_weight(n_max + 3) - log_weight(n_max + 1));
    if (ratio * weight_ratio < 1.0) {
      const double lp1 = family.log_pmf(n_max + 1);
      const double lp2 = family.log_pmf(n_max + 2);
      const double tail = (exp_or_zero(lp1) + exp_or_zero(lp2)) / (1.0 - ratio);
      const double weighted_tail =
          (exp_or_zero(lp1 + log_weight(n_max + 1)) + exp_or_zero(lp2 + log_weight(n_max + 2))) /
          (1.0 - ratio * weight_ratio);
      if (tail < tail_epsilon) {
        std::vector<double> probs(n_max + 1);
        double weighted = 0.0;
        for (std::size_t n = 0; n <= n_max; ++n) {
          const double lp = family.log_pmf(n);
          probs[n] = exp_or_zero(lp);
          weighted += exp_or_zero(lp + log_weight(n));
        }
        if (weighted_tail < tail_epsilon * weighted) {
          return PhotonNumberDistribution(std::move(probs), tail, false);
        }
      }
    }
    n_max *= 2;
  }
  throw ParameterError("cannot certify the truncation tail; parameters too large");
}

// Ratio bound shared by Poisson-like families: x^2 / ((k+1)(k+2)).
double poisson_two_step(double x, std::size_t k) {
  const double kd = static_cast<double>(k);
  return x * x / ((kd + 1.0) * (kd + 2.0));
}

}  // namespace

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probs, double tail_bound,
                                                   bool finite_support)
    : probs_(std::move(probs)), tail_bound_(tail_bound), finite_support_(finite_support) {
  if (probs_.empty()) throw ParameterError("distribution must have at least one entry");
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ParameterError("probabilities must be finite and >= 0");
  }
  if (!(tail_bound_ >= 0.0)) throw ParameterError("tail bound must be >= 0");
}

PhotonNumberDistribution PhotonNumberDistribution::point_mass(std::size_t n) {
  std::vector<double> probs(n + 1, 0.0);
  probs[n] = 1.0;
  return PhotonNumberDistribution(std::move(probs), 0.0, true);
}

double PhotonNumberDistribution::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

bool PhotonNumberDistribution::is_point_mass(double tol) const {
  std::size_t heavy = 0;
  for (double p : probs_) {
    if (p > tol) ++heavy;
  }
  return heavy == 1;
}

PhotonNumberDistribution PhotonNumberDistribution::shifted(long k) const {
  if (k >= 0) {
    std::vector<double> out(probs_.size() + static_cast<std::size_t>(k), 0.0);
    std::copy(probs_.begin(), probs_.end(), out.begin() + k);
    return PhotonNumberDistribution(std::move(out), tail_bound_, finite_support_);
  }
  const auto down = static_cast<std::size_t>(-k);
  for (std::size_t n = 0; n < std::min(down, probs_.size()); ++n) {
    if (probs_[n] != 0.0) throw ParameterError("cannot shift non-zero probability below n = 0");
  }
  if (down >= probs_.size()) throw ParameterError("shift removes the entire support");
  std::vector<double> out(probs_.begin() + static_cast<long>(down), probs_.end());
  return PhotonNumberDistribution(std::move(out), tail_bound_, finite_support_);
}

double total_variation(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::fabs(a[i] - b[i]);
  return 0.5 * sum;
}

double max_abs_difference(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

double estimate_tail(std::span<const double> probs) {
  // Parity-restricted states alternate with structural zeros, so compare the
  // last non-zero entry with an earlier non-zero one a few steps back.
  std::size_t hi = probs.size();
  while (hi > 0 && probs[hi - 1] == 0.0) --hi;
  if (hi == 0) return 0.0;
  --hi;
  if (hi < 4) return kInf;
  std::size_t lo = hi - 4;
  while (lo > 0 && probs[lo] == 0.0) --lo;
  if (probs[lo] == 0.0) return kInf;
  const double ratio = std::pow(probs[hi] / probs[lo], 1.0 / static_cast<double>(hi - lo));
  if (!(ratio < 1.0)) return kInf;
  return probs[hi] * ratio / (1.0 - ratio);
}

PhotonNumberDistribution build_distribution(const StateSpec& spec, double tail_epsilon) {
  spec.validate();
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) throw ParameterError("tail epsilon must lie in (0, 1)");

  using special::log_choose;
  using special::log_factorial;
  const double x = spec.intensity;
  const double eta = spec.eta;
  const std::size_t count = spec.count;
  const double mean = analytic_mean(spec);

  switch (spec.family) {
    case Family::Fock:
      return PhotonNumberDistribution::point_mass(count);

    case Family::Binomial: {
      if (eta == 0.0) return PhotonNumberDistribution::point_mass(0);
      if (eta == 1.0) return PhotonNumberDistribution::point_mass(count);
      std::vector<double> probs(count + 1);
      const double le = std::log(eta);
      const double l1e = std::log1p(-eta);
      for (std::size_t n = 0; n <= count; ++n) {
        probs[n] = std::exp(log_choose(count, n) + n * le + (count - n) * l1e);
      }
      return PhotonNumberDistribution(std::move(probs), 0.0, true);
    }

    case Family::Coherent: {
      if (x == 0.0) return PhotonNumberDistribution::point_mass(0);
      const double lx = std::log(x);
      return certify({[=](std::size_t n) { return -x + n * lx - log_factorial(n); },
                      [=](std::size_t k) { return poisson_two_step(x, k); }},
                     mean, tail_epsilon);
    }

    case Family::Thermal: {
      if (x == 0.0) return PhotonNumberDistribution::point_mass(0);
      // P(n) = nbar^n / (nbar+1)^(n+1)
      const double lr = std::log(x) - std::log1p(x);
      const double r = x / (1.0 + x);
      return certify({[=](std::size_t n) { return n * lr - std::log1p(x); },
                      [=](std::size_t) { return r * r; }},
                     mean, tail_epsilon);
    }

    case Family::SqueezedVacuum: {
      if (x == 0.0) return PhotonNumberDistribution::point_mass(0);
      // P(2k) = (nbar+1)^(-1/2) r^k (2k)! / (2^(2k) (k!)^2), r = nbar/(nbar+1)
      const double lr = std::log(x) - std::log1p(x);
      const double lnorm = -0.5 * std::log1p(x);
      const double r = x / (1.0 + x);
      return certify({[=](std::size_t n) {
                        if (n % 2 == 1) return -kInf;
                        const std::size_t k = n / 2;
                        return lnorm + k * lr + log_factorial(2 * k) - 2.0 * k * std::log(2.0) -
                               2.0 * log_factorial(k);
                      },
                      [=](std::size_t) { return r; }},
                     mean, tail_epsilon);
    }

    case Family::CatEven: {
      if (x == 0.0) return PhotonNumberDistribution::point_mass(0);
      const double lx = std::log(x);
      const double lnorm = special::log_cosh(x);
      return certify({[=](std::size_t n) {
                        if (n % 2 == 1) return -kInf;
                        return n * lx - log_factorial(n) - lnorm;
                      },
                      [=](std::size_t k) { return poisson_two_step(x, k); }},
                     mean, tail_epsilon);
    }

    case Family::CatOdd: {
      const double lx = std::log(x);
      const double lnorm = special::log_sinh(x);
      return certify({[=](std::size_t n) {
                        if (n % 2 == 0) return -kInf;
                        return n * lx - log_factorial(n) - lnorm;
                      },
                      [=](std::size_t k) { return poisson_two_step(x, k); }},
                     mean, tail_epsilon);
    }

    case Family::NegBinomial:
    case Family::AgarwalNegBinomial: {
      const bool agarwal = spec.family == Family::AgarwalNegBinomial;
      const std::size_t offset = agarwal ? 0 : count;
      if (eta == 1.0) return PhotonNumberDistribution::point_mass(offset);
      // P(n) = C(n, M) eta^(M+1) (1-eta)^(n-M), n >= M; the Agarwal form is
      // the same sequence shifted down by M.
      const double le = std::log(eta);
      const double l1e = std::log1p(-eta);
      const double md = static_cast<double>(count);
      auto log_pmf = [=](std::size_t n) {
        if (n < offset) return -kInf;
        const std::size_t j = n + count - offset;  // index in the n >= M form
        return log_choose(j, count) + (md + 1.0) * le + static_cast<double>(j - count) * l1e;
      };
      auto two_step = [=](std::size_t k) {
        const std::size_t j = k + count - offset;
        if (j < count) return kInf;
        // P(j+1)/P(j) = (j+1)/(j+1-M) (1-eta), decreasing in j
        const double jd = static_cast<double>(j);
        const double one = (jd + 1.0) / (jd + 1.0 - md) * (1.0 - eta);
        return one * one;
      };
      return certify({log_pmf, two_step}, mean, tail_epsilon);
    }
  }
  throw ParameterError("unknown state family");
}

}  // namespace photonstat
