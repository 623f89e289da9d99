#include "photonstat/photon_ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "photonstat/errors.hpp"
#include "photonstat/moments.hpp"
#include "photonstat/special.hpp"

namespace photonstat {

namespace {

void require_count(unsigned count) {
  if (count == 0) throw ParameterError("photon count must be >= 1");
}

double output_tail(const std::vector<double>& probs, bool finite_support) {
  return finite_support ? 0.0 : estimate_tail(probs);
}

}  // namespace

OpResult subtract(const PhotonNumberDistribution& dist, unsigned count) {
  require_count(count);
  const auto in = dist.probs();
  const double norm = factorial_moment(dist, count);
  if (!(norm > kZeroNormalizer) || in.size() <= count) {
    throw ImpossibleEventError("cannot subtract " + std::to_string(count) +
                               " photon(s): the heralding event has zero probability");
  }
  const double log_norm = std::log(norm);
  std::vector<double> out(in.size() - count, 0.0);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double p = in[n + count];
    if (p == 0.0) continue;
    out[n] = std::exp(special::log_rising(n, count) + std::log(p) - log_norm);
  }
  const double tail = output_tail(out, dist.finite_support());
  return {PhotonNumberDistribution(std::move(out), tail, dist.finite_support()),
          OpRecord{OpKind::Subtract, count, norm}};
}

OpResult add(const PhotonNumberDistribution& dist, unsigned count) {
  require_count(count);
  const auto in = dist.probs();
  const double norm = negative_factorial_moment(dist, count);
  const double log_norm = std::log(norm);
  std::vector<double> out(in.size() + count, 0.0);
  for (std::size_t n = 0; n < in.size(); ++n) {
    if (in[n] == 0.0) continue;
    out[n + count] = std::exp(special::log_rising(n, count) + std::log(in[n]) - log_norm);
  }
  const double tail = output_tail(out, dist.finite_support());
  return {PhotonNumberDistribution(std::move(out), tail, dist.finite_support()),
          OpRecord{OpKind::Add, count, norm}};
}

double subtracted_factorial_moment(const PhotonNumberDistribution& dist, unsigned count, unsigned m) {
  require_count(count);
  const double norm = factorial_moment(dist, count);
  if (!(norm > kZeroNormalizer)) {
    throw ImpossibleEventError("subtraction normalizer <n^(l)> is zero");
  }
  return factorial_moment(dist, m + count) / norm;
}

double added_negative_factorial_moment(const PhotonNumberDistribution& dist, unsigned count, unsigned m) {
  require_count(count);
  return negative_factorial_moment(dist, m + count) / negative_factorial_moment(dist, count);
}

MeanShift mean_shift_analysis(const PhotonNumberDistribution& dist) {
  MeanShift shift;
  const double total = dist.total();
  shift.mean_before = mean(dist) / total;
  double var = 0.0;
  for (std::size_t n = 0; n < dist.size(); ++n) {
    const double d = static_cast<double>(n) - shift.mean_before;
    var += d * d * dist[n];
  }
  var /= total;
  const double first = factorial_moment(dist, 1);
  if (first > kZeroNormalizer) {
    const double second = factorial_moment(dist, 2);
    shift.mean_after_sub = second / first;
    shift.g2 = (second / total) / (shift.mean_before * shift.mean_before);
  }
  // <n>^{1+} = <(n+1)^2>/<n+1> - 1
  double sq = 0.0;
  double lin = 0.0;
  const auto probs = dist.probs();
  for (std::size_t n = 0; n < probs.size(); ++n) {
    const double k = static_cast<double>(n) + 1.0;
    lin += k * probs[n];
    sq += k * k * probs[n];
  }
  shift.mean_after_add = sq / lin;
  shift.predicted_add_mean = shift.mean_before + 1.0 + var / (shift.mean_before + 1.0);
  return shift;
}

}  // namespace photonstat
