#include "photonstat/moments.hpp"

#include <algorithm>
#include <cmath>

#include "photonstat/errors.hpp"
#include "photonstat/special.hpp"

namespace photonstat {

double factorial_moment(const PhotonNumberDistribution& dist, unsigned m) {
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = m; n < probs.size(); ++n) {
    if (probs[n] == 0.0) continue;
    sum += std::exp(special::log_falling(n, m) + std::log(probs[n]));
  }
  return sum;
}

double negative_factorial_moment(const PhotonNumberDistribution& dist, unsigned m) {
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (probs[n] == 0.0) continue;
    sum += std::exp(special::log_rising(n, m) + std::log(probs[n]));
  }
  return sum;
}

double mean(const PhotonNumberDistribution& dist) {
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = 1; n < probs.size(); ++n) sum += static_cast<double>(n) * probs[n];
  return sum;
}

double variance(const PhotonNumberDistribution& dist) {
  const double mu = mean(dist);
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double d = static_cast<double>(n) - mu;
    sum += d * d * probs[n];
  }
  return sum;
}

double parity(const PhotonNumberDistribution& dist) {
  const auto probs = dist.probs();
  double sum = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) sum += (n % 2 == 0) ? probs[n] : -probs[n];
  // Rounding can push a pure-parity state a few ulps past +-1.
  if (std::fabs(dist.total() - 1.0) <= kNormalizationSlack) return std::clamp(sum, -1.0, 1.0);
  return sum;
}

MomentReport moments(const PhotonNumberDistribution& dist, unsigned k) {
  if (!dist.finite_support() && k > dist.truncation()) {
    throw ParameterError("moment order exceeds the truncation");
  }
  MomentReport report;
  report.mean = mean(dist);
  report.variance = variance(dist);
  report.parity = parity(dist);
  report.factorial_moments.reserve(k + 1);
  report.negative_factorial_moments.reserve(k + 1);
  for (unsigned m = 0; m <= k; ++m) {
    // Order 0 is the normalization by definition.
    report.factorial_moments.push_back(m == 0 ? 1.0 : factorial_moment(dist, m));
    report.negative_factorial_moments.push_back(m == 0 ? 1.0 : negative_factorial_moment(dist, m));
  }
  if (report.mean > 0.0) report.g2 = factorial_moment(dist, 2) / (report.mean * report.mean);
  return report;
}

}  // namespace photonstat
