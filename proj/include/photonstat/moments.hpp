#pragma once

#include <optional>
#include <vector>

#include "photonstat/distribution.hpp"

namespace photonstat {

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  /// Second-order coherence <n(n-1)>/<n>^2; empty for the vacuum.
  std::optional<double> g2;
  double parity = 1.0;
  /// <n^(m)> = <n(n-1)...(n-m+1)> for m = 0..K.
  std::vector<double> factorial_moments;
  /// <(n+1)^(-m)> = <(n+1)(n+2)...(n+m)> for m = 0..K.
  std::vector<double> negative_factorial_moments;
};

/// Sum_n P(n) n!/(n-m)!, weights evaluated in log-gamma space.
double factorial_moment(const PhotonNumberDistribution& dist, unsigned m);

/// Sum_n P(n) (n+m)!/n!.
double negative_factorial_moment(const PhotonNumberDistribution& dist, unsigned m);

double mean(const PhotonNumberDistribution& dist);
double variance(const PhotonNumberDistribution& dist);

/// P(even) - P(odd).
double parity(const PhotonNumberDistribution& dist);

/// Requires K <= truncation for distributions without finite support.
MomentReport moments(const PhotonNumberDistribution& dist, unsigned k);

}  // namespace photonstat
