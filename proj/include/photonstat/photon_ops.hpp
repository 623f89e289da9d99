#pragma once

#include <optional>
#include <utility>

#include "photonstat/distribution.hpp"

namespace photonstat {

/// Below this normalizer the heralding event is treated as impossible.
inline constexpr double kZeroNormalizer = 1e-300;

enum class OpKind { Subtract, Add };

struct OpRecord {
  OpKind kind = OpKind::Subtract;
  unsigned count = 1;
  /// <n^(l)> of the input for subtraction, <(n+1)^(-l)> for addition.
  double success_norm = 1.0;
};

struct OpResult {
  PhotonNumberDistribution dist;
  OpRecord record;
};

/// l-photon subtraction: P'(n) proportional to (n+l)!/n! P(n+l).
/// Throws ImpossibleEventError when <n^(l)> <= 1e-300.
OpResult subtract(const PhotonNumberDistribution& dist, unsigned count);

/// l-photon addition: P'(n) proportional to n!/(n-l)! P(n-l), normalized by
/// <(n+1)^(-l)> = Tr(rho a^l a^dag^l).
OpResult add(const PhotonNumberDistribution& dist, unsigned count);

/// <n^(m+l)> / <n^(l)> of the input.
double subtracted_factorial_moment(const PhotonNumberDistribution& dist, unsigned count, unsigned m);

/// <(n+1)^(-m-l)> / <(n+1)^(-l)> of the input.
double added_negative_factorial_moment(const PhotonNumberDistribution& dist, unsigned count, unsigned m);

struct MeanShift {
  double mean_before = 0.0;
  /// Empty when subtraction from this state is impossible (vacuum).
  std::optional<double> mean_after_sub;
  double mean_after_add = 0.0;
  std::optional<double> g2;
  /// <n> + 1 + var/(<n> + 1).
  double predicted_add_mean = 0.0;
};

MeanShift mean_shift_analysis(const PhotonNumberDistribution& dist);

}  // namespace photonstat
