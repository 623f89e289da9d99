#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "photonstat/state.hpp"

namespace photonstat {

inline constexpr double kDefaultTailEpsilon = 1e-14;
inline constexpr double kNormalizationSlack = 1e-12;

/// Infinite-support truncations also bound the tail of (n+1)...(n+K) P(n)
/// relative to its truncated sum, for this K, so that moments and photon
/// operations up to combined order K keep relative precision epsilon.
inline constexpr std::size_t kCertifiedMomentOrder = 8;

/// Photon-number probabilities P(0..N_max) of a single mode.
///
/// `tail_bound` is the probability mass that may lie beyond the truncation.
/// It is zero for distributions whose support is known to be finite.
class PhotonNumberDistribution {
 public:
  PhotonNumberDistribution() : probs_{1.0} {}
  PhotonNumberDistribution(std::vector<double> probs, double tail_bound, bool finite_support);

  static PhotonNumberDistribution point_mass(std::size_t n);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  std::size_t truncation() const { return probs_.size() - 1; }
  double tail_bound() const { return tail_bound_; }
  bool finite_support() const { return finite_support_; }

  /// P(n), zero beyond the truncation.
  double operator[](std::size_t n) const { return n < probs_.size() ? probs_[n] : 0.0; }

  double total() const;

  /// True when exactly one photon number carries all the weight.
  bool is_point_mass(double tol = 0.0) const;

  /// Moves all probability up by `k` photons (k > 0) or down by `-k`
  /// (k < 0). Shifting down requires P(n) = 0 for n < -k.
  PhotonNumberDistribution shifted(long k) const;

 private:
  std::vector<double> probs_;
  double tail_bound_ = 0.0;
  bool finite_support_ = true;
};

/// Half the l1 distance, over the union of both supports.
double total_variation(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b);

/// max_n |a(n) - b(n)| over the union of both supports.
double max_abs_difference(const PhotonNumberDistribution& a, const PhotonNumberDistribution& b);

/// Estimates the mass beyond the last entry by fitting a geometric decay to
/// the trailing entries. Returns +inf when the trailing entries do not decay.
double estimate_tail(std::span<const double> probs);

/// Truncated distribution for `spec`, certified so that tail_bound <= tail_epsilon.
///
/// Infinite-support families start at N_max = max(32, ceil(8 (mean + 1))) and
/// double N_max until an analytic bound on the omitted mass drops below
/// `tail_epsilon` (and the moment-weighted tail below `tail_epsilon` relative).
/// Fock and binomial states are exact.
PhotonNumberDistribution build_distribution(const StateSpec& spec,
                                            double tail_epsilon = kDefaultTailEpsilon);

}  // namespace photonstat
