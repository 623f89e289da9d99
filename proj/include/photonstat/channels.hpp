#pragma once

#include <cstdint>

#include "photonstat/distribution.hpp"

namespace photonstat {

enum class ChannelKind { Attenuate, Amplify };

/// Ideal loss with transmission eta in [0, 1] (eta = 1 is the identity), or
/// ideal fully-inverted amplification with gain G >= 1.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::Attenuate;
  double value = 1.0;

  void validate() const;
};

/// Binomial loss kernel: P'(n) = Sum_{m>=n} C(m,n) eta^n (1-eta)^(m-n) P(m).
PhotonNumberDistribution attenuate(const PhotonNumberDistribution& dist, double eta);

/// Negative-binomial gain kernel:
///   P'(n) = Sum_{M<=n} C(n,M) G^-(M+1) (1-1/G)^(n-M) P(M).
/// The output truncation is re-certified against `tail_epsilon` using the
/// amplified mean G <n> + G - 1 as the starting scale.
PhotonNumberDistribution amplify(const PhotonNumberDistribution& dist, double gain,
                                 double tail_epsilon = kDefaultTailEpsilon);

PhotonNumberDistribution apply_channel(const PhotonNumberDistribution& dist, const ChannelSpec& channel,
                                       double tail_epsilon = kDefaultTailEpsilon);

struct ClosureReport {
  /// max_n |generic(n) - closed(n)|
  double max_pointwise_error = 0.0;
  /// Largest relative error of the (negative) factorial moments against the
  /// closed-form moment law.
  double max_moment_error = 0.0;
  bool passed = false;
};

/// Subtracting l photons from the binomial state (eta, M) gives the binomial
/// state (eta, M - l), whose factorial moments are eta^m (M-l)!/(M-l-m)!.
/// Throws ImpossibleEventError when l > M.
ClosureReport binomial_closure_check(double eta, std::uint64_t m, unsigned count, double tolerance = 1e-12);

/// Adding l photons to the negative binomial state (eta, M) gives (eta, M + l),
/// whose negative factorial moments are eta^-m (M+l+m)!/(M+l)!.
ClosureReport negbinomial_closure_check(double eta, std::uint64_t m, unsigned count, double tolerance = 1e-12);

/// <n + 1> of the Agarwal negative binomial state: (M+1)/eta - M.
double agarwal_mean_plus_one(double eta, std::uint64_t m);

}  // namespace photonstat
