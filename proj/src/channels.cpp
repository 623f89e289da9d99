#include "photonstat/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "photonstat/errors.hpp"
#include "photonstat/moments.hpp"
#include "photonstat/photon_ops.hpp"
#include "photonstat/special.hpp"

namespace photonstat {

namespace {

constexpr std::size_t kMaxAmplifiedTruncation = std::size_t{1} << 22;

std::vector<double> log_factorials(std::size_t n_max) {
  std::vector<double> table(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) table[n] = special::log_factorial(n);
  return table;
}

// Upper bound on Sum_{n>cut} C(n,M) g^(M+1) (1-g)^(n-M): the terms are
// log-concave in n with ratio (n+1)/(n+1-M) (1-g) falling towards 1-g.
double gain_kernel_tail(std::size_t cut, std::size_t source, double log_g, double log_1g) {
  const std::size_t first = cut + 1;
  if (first <= source) return std::numeric_limits<double>::infinity();
  const double ratio = (static_cast<double>(first) + 1.0) / (static_cast<double>(first - source) + 1.0) *
                       std::exp(log_1g);
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  const double lead = std::exp(special::log_choose(first, source) + (source + 1.0) * log_g +
                               static_cast<double>(first - source) * log_1g);
  return lead / (1.0 - ratio);
}

}  // namespace

void ChannelSpec::validate() const {
  if (kind == ChannelKind::Attenuate && !(value >= 0.0 && value <= 1.0)) {
    throw ParameterError("attenuation requires 0 <= eta <= 1");
  }
  if (kind == ChannelKind::Amplify && !(value >= 1.0 && std::isfinite(value))) {
    throw ParameterError("amplification requires a finite gain G >= 1");
  }
}

PhotonNumberDistribution attenuate(const PhotonNumberDistribution& dist, double eta) {
  ChannelSpec{ChannelKind::Attenuate, eta}.validate();
  const auto in = dist.probs();
  if (eta == 1.0) return dist;
  std::vector<double> out(in.size(), 0.0);
  if (eta == 0.0) {
    out[0] = dist.total();
    return PhotonNumberDistribution(std::move(out), dist.tail_bound(), dist.finite_support());
  }
  const auto lf = log_factorials(in.size());
  const double le = std::log(eta);
  const double l1e = std::log1p(-eta);
  std::vector<double> log_in(in.size());
  for (std::size_t m = 0; m < in.size(); ++m) {
    log_in[m] = in[m] > 0.0 ? std::log(in[m]) : -std::numeric_limits<double>::infinity();
  }
  for (std::size_t n = 0; n < in.size(); ++n) {
    double sum = 0.0;
    const double head = n * le - lf[n];
    for (std::size_t m = n; m < in.size(); ++m) {
      if (in[m] == 0.0) continue;
      sum += std::exp(head + lf[m] - lf[m - n] + static_cast<double>(m - n) * l1e + log_in[m]);
    }
    out[n] = sum;
  }
  // Mass beyond the truncation can only land on n <= truncation or beyond;
  // either way it is bounded by the input tail.
  return PhotonNumberDistribution(std::move(out), dist.tail_bound(), dist.finite_support());
}

PhotonNumberDistribution amplify(const PhotonNumberDistribution& dist, double gain, double tail_epsilon) {
  ChannelSpec{ChannelKind::Amplify, gain}.validate();
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) throw ParameterError("tail epsilon must lie in (0, 1)");
  if (gain == 1.0) return dist;
  const auto in = dist.probs();
  const double total = dist.total();
  const double scale = gain * (mean(dist) / total) + gain - 1.0;
  const double log_g = -std::log(gain);
  const double log_1g = std::log1p(-1.0 / gain);

  std::size_t cut = std::max<std::size_t>({32, in.size(), static_cast<std::size_t>(std::ceil(8.0 * (scale + 1.0)))});
  double tail = std::numeric_limits<double>::infinity();
  for (; cut <= kMaxAmplifiedTruncation; cut *= 2) {
    tail = 0.0;
    for (std::size_t m = 0; m < in.size() && std::isfinite(tail); ++m) {
      if (in[m] > 0.0) tail += in[m] * gain_kernel_tail(cut, m, log_g, log_1g);
    }
    if (tail < tail_epsilon) break;
  }
  if (!(tail < tail_epsilon)) throw ParameterError("cannot certify the amplified truncation tail");

  const auto lf = log_factorials(cut);
  std::vector<double> log_in(in.size());
  for (std::size_t m = 0; m < in.size(); ++m) {
    log_in[m] = in[m] > 0.0 ? std::log(in[m]) : -std::numeric_limits<double>::infinity();
  }
  std::vector<double> out(cut + 1, 0.0);
  for (std::size_t n = 0; n <= cut; ++n) {
    double sum = 0.0;
    const std::size_t top = std::min(n, in.size() - 1);
    for (std::size_t m = 0; m <= top; ++m) {
      if (in[m] == 0.0) continue;
      sum += std::exp(lf[n] - lf[m] - lf[n - m] + (m + 1.0) * log_g + static_cast<double>(n - m) * log_1g +
                      log_in[m]);
    }
    out[n] = sum;
  }
  return PhotonNumberDistribution(std::move(out), tail + dist.tail_bound(), false);
}

PhotonNumberDistribution apply_channel(const PhotonNumberDistribution& dist, const ChannelSpec& channel,
                                       double tail_epsilon) {
  channel.validate();
  return channel.kind == ChannelKind::Attenuate ? attenuate(dist, channel.value)
                                                : amplify(dist, channel.value, tail_epsilon);
}

ClosureReport binomial_closure_check(double eta, std::uint64_t m, unsigned count, double tolerance) {
  const auto initial = build_distribution(StateSpec::binomial(eta, m));
  if (count > m) {
    throw ImpossibleEventError("cannot subtract more photons than the binomial state's M");
  }
  const auto generic = subtract(initial, count).dist;
  const std::uint64_t reduced = m - count;
  const auto closed = build_distribution(StateSpec::binomial(eta, reduced));

  ClosureReport report;
  report.max_pointwise_error = max_abs_difference(generic, closed);
  for (unsigned k = 0; k <= reduced + 1; ++k) {
    const double expected =
        k > reduced ? 0.0 : std::pow(eta, k) * std::exp(special::log_falling(reduced, k));
    const double got = factorial_moment(generic, k);
    const double err = std::fabs(got - expected) / std::max(1.0, std::fabs(expected));
    report.max_moment_error = std::max(report.max_moment_error, err);
  }
  report.passed = report.max_pointwise_error <= tolerance && report.max_moment_error <= 1e-10;
  return report;
}

ClosureReport negbinomial_closure_check(double eta, std::uint64_t m, unsigned count, double tolerance) {
  const auto initial = build_distribution(StateSpec::negbinomial(eta, m));
  const auto generic = add(initial, count).dist;
  const std::uint64_t raised = m + count;
  const auto closed = build_distribution(StateSpec::negbinomial(eta, raised));

  ClosureReport report;
  report.max_pointwise_error = max_abs_difference(generic, closed);
  for (unsigned k = 1; k <= 4; ++k) {
    const double expected = std::pow(eta, -static_cast<double>(k)) * std::exp(special::log_rising(raised, k));
    const double got = negative_factorial_moment(generic, k);
    report.max_moment_error = std::max(report.max_moment_error, std::fabs(got - expected) / expected);
  }
  report.passed = report.max_pointwise_error <= tolerance && report.max_moment_error <= 1e-10;
  return report;
}

double agarwal_mean_plus_one(double eta, std::uint64_t m) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError("Agarwal state requires 0 < eta <= 1");
  const double md = static_cast<double>(m);
  return (md + 1.0) / eta - md;
}

}  // namespace photonstat
