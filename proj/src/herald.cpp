#include "photonstat/herald.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "photonstat/errors.hpp"
#include "photonstat/moments.hpp"

namespace photonstat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations so results are portable.
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PhotonNumberDistribution weighted(const PhotonNumberDistribution& prior, double offset, const char* what) {
  std::vector<double> out(prior.size());
  double norm = 0.0;
  for (std::size_t n = 0; n < prior.size(); ++n) {
    out[n] = (static_cast<double>(n) + offset) * prior[n];
    norm += out[n];
  }
  if (!(norm > 0.0)) throw ImpossibleEventError(what);
  for (double& v : out) v /= norm;
  return PhotonNumberDistribution(std::move(out), prior.finite_support() ? 0.0 : estimate_tail(out),
                                  prior.finite_support());
}

}  // namespace

void HeraldConfig::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("herald probability p must lie in (0, 1)");
  if (samples < 1) throw ParameterError("herald sample count must be >= 1");
}

PhotonNumberDistribution posterior_given_subtraction(const PhotonNumberDistribution& prior) {
  return weighted(prior, 0.0, "subtraction from a state with zero mean photon number is impossible");
}

PhotonNumberDistribution posterior_given_addition(const PhotonNumberDistribution& prior) {
  return weighted(prior, 1.0, "empty prior");
}

double success_prob_given_n(std::uint64_t n, double p) {
  if (n == 0) return 0.0;
  return static_cast<double>(n) * p * std::pow(1.0 - p, static_cast<double>(n - 1));
}

double exact_success_probability(const PhotonNumberDistribution& prior, double p) {
  double sum = 0.0;
  for (std::size_t n = 1; n < prior.size(); ++n) sum += prior[n] * success_prob_given_n(n, p);
  return sum;
}

PhotonNumberDistribution exact_heralded_conditional(const PhotonNumberDistribution& prior, double p) {
  if (prior.size() < 2) throw ImpossibleEventError("prior has no support above the vacuum");
  std::vector<double> out(prior.size() - 1);
  double norm = 0.0;
  for (std::size_t n = 1; n < prior.size(); ++n) {
    out[n - 1] = prior[n] * success_prob_given_n(n, p);
    norm += out[n - 1];
  }
  if (!(norm > 0.0)) throw ImpossibleEventError("heralding from this prior has zero probability");
  for (double& v : out) v /= norm;
  return PhotonNumberDistribution(std::move(out), 0.0, true);
}

HeraldResult simulate_heralded_subtraction(const PhotonNumberDistribution& prior, const HeraldConfig& config) {
  config.validate();
  const auto probs = prior.probs();
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();
  if (!(total > 0.0)) throw ParameterError("prior has no probability mass");

  std::mt19937_64 rng(splitmix64(config.seed));
  std::vector<std::uint64_t> counts(probs.size(), 0);
  std::uint64_t accepted = 0;
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    const double u = uniform53(rng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto n = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), probs.size() - 1));
    unsigned clicks = 0;
    for (std::size_t k = 0; k < n && clicks < 2; ++k) {
      if (uniform53(rng) < config.p) ++clicks;
    }
    if (clicks == 1) {
      ++counts[n - 1];
      ++accepted;
    }
  }
  if (accepted == 0) {
    throw InsufficientStatisticsError("no heralding event in " + std::to_string(config.samples) + " samples",
                                      exact_heralded_conditional(prior, config.p));
  }
  std::size_t last = counts.size();
  while (last > 1 && counts[last - 1] == 0) --last;
  std::vector<double> empirical(last);
  for (std::size_t n = 0; n < last; ++n) {
    empirical[n] = static_cast<double>(counts[n]) / static_cast<double>(accepted);
  }
  HeraldResult result{PhotonNumberDistribution(std::move(empirical), 0.0, true),
                      static_cast<double>(accepted) / static_cast<double>(config.samples),
                      accepted,
                      config.samples,
                      config.seed,
                      kHeraldRngAlgorithm};
  return result;
}

BayesConsistency coherent_bayes_consistency(double alpha_sq, double p, std::uint64_t n) {
  if (!(alpha_sq > 0.0)) throw ParameterError("coherent prior requires |alpha|^2 > 0");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("herald probability p must lie in (0, 1)");
  const auto prior = build_distribution(StateSpec::coherent(alpha_sq));
  const double success = exact_success_probability(prior, p);
  BayesConsistency out;
  out.n = n;
  out.ratio = success_prob_given_n(n, p) / success;
  out.predicted = static_cast<double>(n) / alpha_sq;
  out.relative_deviation = out.predicted == 0.0 ? std::fabs(out.ratio) : std::fabs(out.ratio / out.predicted - 1.0);
  return out;
}

}  // namespace photonstat
