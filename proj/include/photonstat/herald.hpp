#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "photonstat/distribution.hpp"

namespace photonstat {

/// Per-photon subtraction model: every input photon is independently
/// reflected and detected with probability p; a run is accepted when exactly
/// one detector click occurs.
struct HeraldConfig {
  double p = 0.01;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct HeraldResult {
  /// Empirical distribution of the remaining photon number (n - 1) over
  /// accepted runs.
  PhotonNumberDistribution empirical_conditional;
  double success_rate = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
};

/// Thrown when no run is accepted; carries the exact conditional so callers
/// can still report it.
class InsufficientStatisticsError : public std::runtime_error {
 public:
  InsufficientStatisticsError(const std::string& what, PhotonNumberDistribution exact)
      : std::runtime_error(what), exact_(std::move(exact)) {}
  const PhotonNumberDistribution& exact_conditional() const { return exact_; }

 private:
  PhotonNumberDistribution exact_;
};

inline constexpr const char* kHeraldRngAlgorithm = "mt19937_64/splitmix64-seed/uniform53";

/// Posterior over the pre-subtraction photon number: n P(n) / <n>.
PhotonNumberDistribution posterior_given_subtraction(const PhotonNumberDistribution& prior);

/// Posterior over the pre-addition photon number: (n+1) P(n) / (<n> + 1).
PhotonNumberDistribution posterior_given_addition(const PhotonNumberDistribution& prior);

/// n p (1-p)^(n-1); zero at n = 0.
double success_prob_given_n(std::uint64_t n, double p);

/// Sum_n P(n) n p (1-p)^(n-1).
double exact_success_probability(const PhotonNumberDistribution& prior, double p);

/// Exact conditional of the exactly-one-click model, shifted down by one:
/// proportional to (n+1) p (1-p)^n P(n+1).
PhotonNumberDistribution exact_heralded_conditional(const PhotonNumberDistribution& prior, double p);

/// Monte Carlo: draw n from the prior by inverse CDF, flip n Bernoulli(p)
/// coins, accept iff exactly one succeeds and record n - 1.
HeraldResult simulate_heralded_subtraction(const PhotonNumberDistribution& prior, const HeraldConfig& config);

struct BayesConsistency {
  std::uint64_t n = 0;
  /// P(succ | n) / P(succ) under the Bernoulli model.
  double ratio = 0.0;
  /// n / <n>, the linear law that holds as p -> 0.
  double predicted = 0.0;
  double relative_deviation = 0.0;
};

/// Compares the Bernoulli success model with the linear-in-n law for a
/// coherent prior of intensity |alpha|^2 > 0.
BayesConsistency coherent_bayes_consistency(double alpha_sq, double p, std::uint64_t n);

}  // namespace photonstat
