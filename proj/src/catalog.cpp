#include "photonstat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "photonstat/channels.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/genfunc.hpp"
#include "photonstat/herald.hpp"
#include "photonstat/moments.hpp"
#include "photonstat/photon_ops.hpp"
#include "photonstat/special.hpp"

namespace photonstat::catalog {

using special::ipow;
using special::laguerre;
using special::log_choose;
using special::log_factorial;

// ---------------------------------------------------------------------------
// Closed forms

double thermal_sub_M(unsigned count, double nbar, double mu) {
  if (count > 0 && !(nbar > 0.0)) throw ImpossibleEventError("cannot subtract from the thermal vacuum");
  const double d = 1.0 + mu * nbar;
  if (d == 0.0) throw DomainError("pole at 1 + mu nbar = 0");
  return ipow(d, -static_cast<long>(count) - 1);
}

double thermal_sub_pmf(unsigned count, double nbar, std::size_t n) {
  if (count > 0 && !(nbar > 0.0)) throw ImpossibleEventError("cannot subtract from the thermal vacuum");
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(nbar) - (n + count + 1.0) * std::log1p(nbar) + log_choose(count + n, count));
}

double thermal_sub_factorial_moment(unsigned count, double nbar, unsigned m) {
  return std::exp(log_factorial(m + count) - log_factorial(count)) * ipow(nbar, m);
}

double thermal_add_N(unsigned count, double nbar, double lambda) {
  const double d = 1.0 + lambda * (1.0 + nbar);
  if (d == 0.0) throw DomainError("pole at 1 + lambda (1 + nbar) = 0");
  return ipow(d, -static_cast<long>(count) - 1);
}

double thermal_add_pmf(unsigned count, double nbar, std::size_t n) {
  if (n < count) return 0.0;
  if (nbar == 0.0) return n == count ? 1.0 : 0.0;
  return std::exp((n - count) * std::log(nbar) - (n + 1.0) * std::log1p(nbar) + log_choose(n, count));
}

double thermal_add_negative_factorial_moment(unsigned count, double nbar, unsigned m) {
  return std::exp(log_factorial(m + count) - log_factorial(count)) * ipow(1.0 + nbar, m);
}

double coherent_add_N(unsigned count, double alpha_sq, double lambda) {
  const double s = 1.0 + lambda;
  if (s == 0.0) throw DomainError("pole at lambda = -1");
  return std::exp(-lambda * alpha_sq / s) * laguerre(count, -alpha_sq / s) /
         (ipow(s, count + 1) * laguerre(count, -alpha_sq));
}

namespace {

// e^{-x} x^(n-shift) / (n-shift)!, zero when n < shift.
double shifted_poisson(double x, std::size_t n, std::size_t shift) {
  if (n < shift) return 0.0;
  const std::size_t k = n - shift;
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-x + k * std::log(x) - log_factorial(k));
}

}  // namespace

double coherent_add_pmf(unsigned count, double alpha_sq, std::size_t n) {
  const double x = alpha_sq;
  switch (count) {
    case 1:
      return (shifted_poisson(x, n, 1) + x * shifted_poisson(x, n, 2)) / (1.0 + x);
    case 2:
      return (2.0 * shifted_poisson(x, n, 2) + 4.0 * x * shifted_poisson(x, n, 3) +
              x * x * shifted_poisson(x, n, 4)) /
             (x * x + 4.0 * x + 2.0);
    default:
      throw ParameterError("closed-form photon-added coherent pmf exists only for 1 or 2 photons");
  }
}

double coherent_add_mean_plus_one(unsigned count, double alpha_sq) {
  if (count == 0) return alpha_sq + 1.0;
  return alpha_sq + 2.0 * count + 1.0 -
         count * laguerre(count - 1, -alpha_sq) / laguerre(count, -alpha_sq);
}

double fock_sub_M(std::uint64_t n, unsigned count, double mu) {
  if (count > n) throw ImpossibleEventError("cannot subtract more photons than the Fock state holds");
  return ipow(1.0 - mu, static_cast<long>(n - count));
}

double fock_add_N(std::uint64_t n, unsigned count, double lambda) {
  if (1.0 + lambda == 0.0) throw DomainError("pole at lambda = -1");
  return ipow(1.0 + lambda, -static_cast<long>(n + count + 1));
}

double squeezed_sub_M(unsigned count, double nbar, double mu) {
  if (!(nbar > 0.0)) throw ImpossibleEventError("cannot subtract from the vacuum");
  const double q = 1.0 + 2.0 * mu * nbar - mu * mu * nbar;
  if (!(q > 0.0)) throw DomainError("branch point: 1 + 2 mu nbar - mu^2 nbar <= 0");
  switch (count) {
    case 1:
      return (1.0 - mu) / std::pow(q, 1.5);
    case 2:
      return (1.0 + nbar * (3.0 - 4.0 * mu + 2.0 * mu * mu)) / (std::pow(q, 2.5) * (1.0 + 3.0 * nbar));
    default:
      throw ParameterError("closed-form subtracted squeezed vacuum exists only for 1 or 2 photons");
  }
}

double cat_sub_M(unsigned count, double alpha_sq, bool even, double mu) {
  const bool out_even = (count % 2 == 0) ? even : !even;
  if (count > 0 && !(alpha_sq > 0.0)) throw ImpossibleEventError("cannot subtract from the vacuum");
  const StateSpec spec = out_even ? StateSpec::cat_even(alpha_sq) : StateSpec::cat_odd(alpha_sq);
  return closed_form_M(spec, mu);
}

CatMoments cat_moments(bool even, double alpha_sq) {
  const double x = alpha_sq;
  if (!even && !(x > 0.0)) throw ParameterError("odd cat requires |alpha|^2 > 0");
  const double t = even ? std::tanh(x) : 1.0 / std::tanh(x);
  return {x * t, x * x, x * t + 1.0, x * x + 4.0 * x * t + 2.0};
}

// ---------------------------------------------------------------------------
// Registry

std::string_view evaluator_name(EvaluatorKind kind) {
  switch (kind) {
    case EvaluatorKind::MgfM:
      return "mgf_M";
    case EvaluatorKind::MgfN:
      return "mgf_N";
    case EvaluatorKind::Pmf:
      return "pmf";
    case EvaluatorKind::Moment:
      return "moment";
    case EvaluatorKind::Property:
      return "property";
  }
  return "unknown";
}

PhotonNumberDistribution VerifyContext::build(const StateSpec& spec) const {
  auto dist = build_distribution(spec, tail_epsilon);
  if (tamper_p0 == 0.0) return dist;
  std::vector<double> probs(dist.probs().begin(), dist.probs().end());
  probs[0] += tamper_p0;
  return PhotonNumberDistribution(std::move(probs), dist.tail_bound(), dist.finite_support());
}

namespace {

// Relative error against the reference, with the reference magnitude floored
// so that exact zeros are compared absolutely.
constexpr double kReferenceFloor = 1e-6;

double rel_err(double got, double expected) {
  const double err = std::fabs(got - expected) / std::max(std::fabs(expected), kReferenceFloor);
  return std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
}

class Tracker {
 public:
  explicit Tracker(double tolerance) { out_.tolerance = tolerance; }

  template <typename Describe>
  void record(double err, Describe&& describe) {
    ++out_.points;
    if (err > out_.max_error || out_.worst_case.empty()) {
      if (err >= out_.max_error) {
        out_.max_error = err;
        out_.worst_case = describe();
      }
    }
  }

  EntryOutcome done() const { return out_; }

 private:
  EntryOutcome out_;
};

std::string fmt(const char* tag, double value) {
  std::ostringstream os;
  os << tag << '=' << value;
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

const std::vector<double> kMuGrid = linspace(0.0, 2.0, 21);
const std::vector<double> kLambdaGrid = linspace(0.0, 5.0, 21);

PhotonNumberDistribution maybe_subtract(const PhotonNumberDistribution& d, unsigned count) {
  return count == 0 ? d : subtract(d, count).dist;
}

PhotonNumberDistribution maybe_add(const PhotonNumberDistribution& d, unsigned count) {
  return count == 0 ? d : add(d, count).dist;
}

// Representative parameter points for every family.
std::vector<StateSpec> family_corpus() {
  return {StateSpec::fock(0),          StateSpec::fock(3),           StateSpec::coherent(0.25),
          StateSpec::coherent(1),      StateSpec::coherent(4),       StateSpec::thermal(0.5),
          StateSpec::thermal(1),       StateSpec::thermal(2),        StateSpec::squeezed(0.5),
          StateSpec::squeezed(1),      StateSpec::cat_even(0.5),     StateSpec::cat_even(2),
          StateSpec::cat_odd(0.5),     StateSpec::cat_odd(2),        StateSpec::binomial(0.3, 6),
          StateSpec::binomial(0.5, 2), StateSpec::negbinomial(0.5, 1), StateSpec::negbinomial(0.7, 3),
          StateSpec::agarwal(0.5, 1),  StateSpec::agarwal(0.6, 2)};
}

// Random distributions over supports of at most `max_support` entries,
// seeded so that every run checks the same corpus. Includes point masses.
std::vector<PhotonNumberDistribution> random_corpus(std::size_t count, std::size_t max_support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> support(1, max_support);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::vector<PhotonNumberDistribution> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 25 == 0) {
      corpus.push_back(PhotonNumberDistribution::point_mass(support(rng) - 1));
      continue;
    }
    std::vector<double> probs(support(rng));
    double norm = 0.0;
    for (double& p : probs) {
      // Sparse supports exercise gaps in the distribution.
      p = weight(rng) < 0.3 ? 0.0 : weight(rng);
      norm += p;
    }
    if (norm == 0.0) {
      probs.back() = 1.0;
      norm = 1.0;
    }
    for (double& p : probs) p /= norm;
    corpus.emplace_back(std::move(probs), 0.0, true);
  }
  return corpus;
}

EntryOutcome run_thermal_sub_mgf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 0; l <= 3; ++l) {
      const auto s = maybe_subtract(d, l);
      for (double mu : kMuGrid) {
        t.record(rel_err(mgf_M(s, mu).value, thermal_sub_M(l, nbar, mu)),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("mu", mu); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_thermal_sub_pmf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 0; l <= 3; ++l) {
      const auto s = maybe_subtract(d, l);
      for (std::size_t n = 0; n <= 30; ++n) {
        t.record(rel_err(s[n], thermal_sub_pmf(l, nbar, n)),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("n", n); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_thermal_sub_moment(const VerifyContext& ctx) {
  Tracker t(1e-10);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l).dist;
      for (unsigned m = 0; m <= 4; ++m) {
        const double expected = thermal_sub_factorial_moment(l, nbar, m);
        t.record(rel_err(factorial_moment(s, m), expected),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("m", m); });
        t.record(rel_err(subtracted_factorial_moment(d, l, m), expected),
                 [&] { return "ratio form " + fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("m", m); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_thermal_add_mgf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 0; l <= 3; ++l) {
      const auto a = maybe_add(d, l);
      for (double lambda : kLambdaGrid) {
        t.record(rel_err(mgf_N(a, lambda).value, thermal_add_N(l, nbar, lambda)),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("lambda", lambda); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_thermal_add_pmf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 0; l <= 3; ++l) {
      const auto a = maybe_add(d, l);
      for (std::size_t n = 0; n <= 30; ++n) {
        t.record(rel_err(a[n], thermal_add_pmf(l, nbar, n)),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("n", n); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_thermal_add_moment(const VerifyContext& ctx) {
  Tracker t(1e-10);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 1; l <= 3; ++l) {
      const auto a = add(d, l).dist;
      for (unsigned m = 0; m <= 4; ++m) {
        const double expected = thermal_add_negative_factorial_moment(l, nbar, m);
        t.record(rel_err(negative_factorial_moment(a, m), expected),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("m", m); });
        t.record(rel_err(added_negative_factorial_moment(d, l, m), expected),
                 [&] { return "ratio form " + fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("m", m); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_coherent_sub_invariance(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (double x : {0.25, 1.0, 4.0}) {
    const auto d = ctx.build(StateSpec::coherent(x));
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l).dist;
      for (std::size_t n = 0; n < s.size(); ++n) {
        t.record(std::fabs(s[n] - d[n]), [&] { return fmt("a2", x) + " " + fmt("l", l) + " " + fmt("n", n); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_coherent_add_mgf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double x : {0.25, 1.0, 4.0}) {
    const auto d = ctx.build(StateSpec::coherent(x));
    for (unsigned l = 1; l <= 4; ++l) {
      const auto a = add(d, l).dist;
      for (double lambda : linspace(0.0, 3.0, 13)) {
        t.record(rel_err(mgf_N(a, lambda).value, coherent_add_N(l, x, lambda)),
                 [&] { return fmt("a2", x) + " " + fmt("l", l) + " " + fmt("lambda", lambda); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_coherent_add_pmf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double x : {0.25, 1.0, 4.0}) {
    const auto d = ctx.build(StateSpec::coherent(x));
    for (unsigned l = 1; l <= 2; ++l) {
      const auto a = add(d, l).dist;
      for (std::size_t n = 0; n <= 25; ++n) {
        t.record(rel_err(a[n], coherent_add_pmf(l, x, n)),
                 [&] { return fmt("a2", x) + " " + fmt("l", l) + " " + fmt("n", n); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_coherent_add_mean(const VerifyContext& ctx) {
  Tracker t(1e-10);
  for (double x : {0.1, 1.0, 10.0}) {
    const auto d = ctx.build(StateSpec::coherent(x));
    for (unsigned l = 1; l <= 4; ++l) {
      const auto a = add(d, l).dist;
      t.record(rel_err(negative_factorial_moment(a, 1), coherent_add_mean_plus_one(l, x)),
               [&] { return fmt("a2", x) + " " + fmt("l", l); });
    }
  }
  return t.done();
}

EntryOutcome run_fock_sub_mgf(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (std::uint64_t n = 1; n <= 6; ++n) {
    const auto d = ctx.build(StateSpec::fock(n));
    for (unsigned l = 1; l <= n; ++l) {
      const auto s = subtract(d, l).dist;
      for (double mu : kMuGrid) {
        t.record(rel_err(mgf_M(s, mu).value, fock_sub_M(n, l, mu)),
                 [&] { return fmt("N", n) + " " + fmt("l", l) + " " + fmt("mu", mu); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_fock_add_mgf(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (std::uint64_t n = 0; n <= 6; ++n) {
    const auto d = ctx.build(StateSpec::fock(n));
    for (unsigned l = 1; l <= 4; ++l) {
      const auto a = add(d, l).dist;
      for (double lambda : kLambdaGrid) {
        t.record(rel_err(mgf_N(a, lambda).value, fock_add_N(n, l, lambda)),
                 [&] { return fmt("N", n) + " " + fmt("l", l) + " " + fmt("lambda", lambda); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_squeezed_sub_mgf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.25, 1.0, 3.0}) {
    const auto d = ctx.build(StateSpec::squeezed(nbar));
    for (unsigned l = 1; l <= 2; ++l) {
      const auto s = subtract(d, l).dist;
      for (double mu : kMuGrid) {
        t.record(rel_err(mgf_M(s, mu).value, squeezed_sub_M(l, nbar, mu)),
                 [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("mu", mu); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_cat_sub_mgf(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (bool even : {true, false}) {
    for (double x : {0.5, 1.0, 3.0}) {
      const auto d = ctx.build(even ? StateSpec::cat_even(x) : StateSpec::cat_odd(x));
      for (unsigned l = 0; l <= 4; ++l) {
        const auto s = maybe_subtract(d, l);
        for (double mu : kMuGrid) {
          t.record(rel_err(mgf_M(s, mu).value, cat_sub_M(l, x, even, mu)), [&] {
            return std::string(even ? "even " : "odd ") + fmt("a2", x) + " " + fmt("l", l) + " " + fmt("mu", mu);
          });
        }
      }
    }
  }
  return t.done();
}

EntryOutcome run_cat_moments(const VerifyContext& ctx) {
  Tracker t(1e-10);
  for (bool even : {true, false}) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      const auto d = ctx.build(even ? StateSpec::cat_even(x) : StateSpec::cat_odd(x));
      const auto closed = cat_moments(even, x);
      auto where = [&] { return std::string(even ? "even " : "odd ") + fmt("a2", x); };
      t.record(rel_err(factorial_moment(d, 1), closed.factorial_1), where);
      t.record(rel_err(factorial_moment(d, 2), closed.factorial_2), where);
      t.record(rel_err(negative_factorial_moment(d, 1), closed.negative_factorial_1), where);
      t.record(rel_err(negative_factorial_moment(d, 2), closed.negative_factorial_2), where);
    }
  }
  return t.done();
}

EntryOutcome run_state_mgf(const VerifyContext& ctx, MgfKind kind) {
  Tracker t(1e-9);
  const auto& grid = kind == MgfKind::M ? kMuGrid : kLambdaGrid;
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    for (double arg : grid) {
      t.record(rel_err(mgf(d, kind, arg).value, closed_form(spec, kind, arg)),
               [&] { return spec.label() + " " + fmt("arg", arg); });
    }
  }
  return t.done();
}

EntryOutcome run_binomial_closure(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (double eta : {0.2, 0.5, 0.9}) {
    for (std::uint64_t m : {2u, 5u, 12u}) {
      const auto d = ctx.build(StateSpec::binomial(eta, m));
      for (unsigned l = 1; l <= m; ++l) {
        const auto s = subtract(d, l).dist;
        const auto closed = build_distribution(StateSpec::binomial(eta, m - l));
        t.record(max_abs_difference(s, closed),
                 [&] { return fmt("eta", eta) + " " + fmt("M", m) + " " + fmt("l", l); });
        for (unsigned k = 0; k <= m - l; ++k) {
          const double expected = std::pow(eta, k) * std::exp(special::log_falling(m - l, k));
          t.record(rel_err(factorial_moment(s, k), expected) * 1e-2,
                   [&] { return "moment " + fmt("eta", eta) + " " + fmt("M", m) + " " + fmt("l", l); });
        }
      }
    }
  }
  return t.done();
}

EntryOutcome run_negbinomial_closure(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (double eta : {0.3, 0.5, 0.8}) {
    for (std::uint64_t m : {0u, 1u, 4u}) {
      const auto d = ctx.build(StateSpec::negbinomial(eta, m));
      for (unsigned l = 1; l <= 3; ++l) {
        const auto a = add(d, l).dist;
        const auto closed = build_distribution(StateSpec::negbinomial(eta, m + l));
        t.record(max_abs_difference(a, closed),
                 [&] { return fmt("eta", eta) + " " + fmt("M", m) + " " + fmt("l", l); });
        for (unsigned k = 1; k <= 4; ++k) {
          const double expected = std::pow(eta, -static_cast<double>(k)) * std::exp(special::log_rising(m + l, k));
          t.record(rel_err(negative_factorial_moment(a, k), expected) * 1e-2,
                   [&] { return "moment " + fmt("eta", eta) + " " + fmt("M", m) + " " + fmt("l", l); });
        }
      }
    }
  }
  return t.done();
}

EntryOutcome run_agarwal_mean(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (double eta : {0.25, 0.5, 0.9}) {
    for (std::uint64_t m : {0u, 1u, 3u}) {
      const auto d = ctx.build(StateSpec::agarwal(eta, m));
      t.record(rel_err(negative_factorial_moment(d, 1), agarwal_mean_plus_one(eta, m)),
               [&] { return fmt("eta", eta) + " " + fmt("M", m); });
      // Agarwal P(n) is the negative binomial P(n + M).
      const auto nb = ctx.build(StateSpec::negbinomial(eta, m));
      for (std::size_t n = 0; n + m < nb.size() && n < d.size(); ++n) {
        t.record(std::fabs(d[n] - nb[n + m]), [&] { return "shift " + fmt("eta", eta) + " " + fmt("n", n); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_attenuation_law(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    for (double eta : {0.0, 0.3, 0.75, 1.0}) {
      const auto att = attenuate(d, eta);
      for (double mu : kMuGrid) {
        t.record(rel_err(mgf_M(att, mu).value, closed_form_M(spec, eta * mu)),
                 [&] { return spec.label() + " " + fmt("eta", eta) + " " + fmt("mu", mu); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_amplification_law(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    for (double gain : {1.0, 1.5, 2.0}) {
      const auto amp = amplify(d, gain, ctx.tail_epsilon);
      for (double lambda : kLambdaGrid) {
        t.record(rel_err(mgf_N(amp, lambda).value, closed_form_N(spec, gain * lambda)),
                 [&] { return spec.label() + " " + fmt("G", gain) + " " + fmt("lambda", lambda); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_parity_identity(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    const double par = parity(d);
    const double closed = closed_form_M(spec, 2.0);
    auto where = [&] { return spec.label(); };
    t.record(rel_err(mgf_M(d, 2.0).value, par), where);
    t.record(rel_err(-mgf_N(d, -2.0).value, par), where);
    t.record(rel_err(par, closed), where);
  }
  return t.done();
}

EntryOutcome run_mgf_duality(const VerifyContext& ctx) {
  Tracker t(1e-10);
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    for (double lambda : {-0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 5.0}) {
      const double mu = lambda / (1.0 + lambda);
      // Analytic route: skip arguments at poles/branch points of the family.
      try {
        const double lhs = closed_form_N(spec, lambda);
        const double rhs = closed_form_M(spec, mu) / (1.0 + lambda);
        t.record(rel_err(lhs, rhs), [&] { return "closed " + spec.label() + " " + fmt("lambda", lambda); });
      } catch (const DomainError&) {
      }
      // Series route, wherever both series converge.
      const auto n_series = mgf_N(d, lambda);
      const auto m_series = mgf_M(d, mu);
      if (n_series.converged && m_series.converged) {
        t.record(rel_err(n_series.value, m_series.value / (1.0 + lambda)),
                 [&] { return "series " + spec.label() + " " + fmt("lambda", lambda); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_addition_bound(const VerifyContext& ctx) {
  // err > 0 only when the bound is violated, or when equality occurs away
  // from a point mass (or vice versa).
  Tracker t(1e-10);
  auto corpus = random_corpus(200, 40, 0x5eed0001);
  if (ctx.tamper_p0 != 0.0) {
    for (auto& d : corpus) {
      std::vector<double> probs(d.probs().begin(), d.probs().end());
      probs[0] += ctx.tamper_p0;
      d = PhotonNumberDistribution(std::move(probs), 0.0, true);
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& d = corpus[i];
    const double before = mean(d) / d.total();
    for (unsigned l = 1; l <= 4; ++l) {
      const double excess = mean(add(d, l).dist) - before - l;
      const bool point = d.is_point_mass();
      double err = std::max(0.0, -excess);
      if (point) err = std::max(err, std::fabs(excess));
      if (!point && excess <= 1e-10) err = std::max(err, 1.0);
      t.record(err, [&] { return fmt("corpus", i) + " " + fmt("l", l); });
    }
  }
  return t.done();
}

EntryOutcome run_covariance_inequality(const VerifyContext&) {
  Tracker t(1e-12);
  const auto corpus = random_corpus(500, 40, 0x5eed0002);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& d = corpus[i];
    for (unsigned l = 1; l <= 4; ++l) {
      auto a = [](std::size_t n) { return n + 1.0; };
      auto b = [l](std::size_t n) { return std::exp(special::log_rising(n, l)); };
      double sum = 0.0;
      for (std::size_t m = 0; m < d.size(); ++m) {
        for (std::size_t n = 0; n < d.size(); ++n) {
          sum += d[n] * d[m] * (a(m) - a(n)) * (b(m) - b(n));
        }
      }
      t.record(std::max(0.0, -sum), [&] { return fmt("corpus", i) + " " + fmt("l", l); });
    }
  }
  return t.done();
}

EntryOutcome run_thermal_shift_duality(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (double nbar : {0.5, 1.0, 2.0}) {
    const auto d = ctx.build(StateSpec::thermal(nbar));
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l).dist.shifted(l);
      const auto a = add(d, l).dist;
      const std::size_t common = std::min(s.size(), a.size());
      for (std::size_t n = 0; n < common; ++n) {
        t.record(std::fabs(s[n] - a[n]), [&] { return fmt("nbar", nbar) + " " + fmt("l", l) + " " + fmt("n", n); });
      }
      t.record(std::fabs(mean(a) - mean(subtract(d, l).dist) - l) * 1e-2,
               [&] { return "mean gap " + fmt("nbar", nbar) + " " + fmt("l", l); });
    }
  }
  return t.done();
}

EntryOutcome run_cat_parity_flip(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (bool even : {true, false}) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      const auto d = ctx.build(even ? StateSpec::cat_even(x) : StateSpec::cat_odd(x));
      const double p0 = parity(d);
      auto where = [&] { return std::string(even ? "even " : "odd ") + fmt("a2", x); };
      t.record(std::fabs(parity(subtract(d, 1).dist) + p0), where);
      t.record(std::fabs(parity(subtract(d, 2).dist) - p0), where);
    }
  }
  return t.done();
}

EntryOutcome run_squeezed_checkpoints(const VerifyContext& ctx) {
  Tracker t(1e-9);
  for (double nbar : {0.25, 1.0, 3.0}) {
    const auto d = ctx.build(StateSpec::squeezed(nbar));
    const auto s1 = subtract(d, 1).dist;
    const auto s2 = subtract(d, 2).dist;
    auto where = [&] { return fmt("nbar", nbar); };
    t.record(std::fabs(mgf_M(s1, 1.0).value), where);
    t.record(std::fabs(mgf_M(s1, 2.0).value + 1.0), where);
    t.record(std::fabs(mgf_M(s2, 2.0).value - 1.0), where);
  }
  return t.done();
}

EntryOutcome run_derivative_theorems(const VerifyContext& ctx) {
  Tracker t(1e-6);
  const std::vector<StateSpec> specs{StateSpec::thermal(1.0), StateSpec::coherent(1.0), StateSpec::squeezed(0.5),
                                     StateSpec::cat_even(1.0), StateSpec::negbinomial(0.5, 1)};
  for (const auto& spec : specs) {
    const auto d = ctx.build(spec);
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l);
      const auto a = add(d, l);
      for (double arg : {0.0, 0.25, 0.5}) {
        auto fm = [&](double mu) { return closed_form_M(spec, mu); };
        auto fn = [&](double lambda) { return closed_form_N(spec, lambda); };
        const double sign = (l % 2 == 1) ? -1.0 : 1.0;
        const double sub = sign * richardson_derivative(fm, arg, l).value / s.record.success_norm;
        const double addv = sign * richardson_derivative(fn, arg, l).value / a.record.success_norm;
        t.record(rel_err(mgf_M(s.dist, arg).value, sub),
                 [&] { return "sub " + spec.label() + " " + fmt("l", l) + " " + fmt("mu", arg); });
        t.record(rel_err(mgf_N(a.dist, arg).value, addv),
                 [&] { return "add " + spec.label() + " " + fmt("l", l) + " " + fmt("lambda", arg); });
      }
    }
  }
  return t.done();
}

EntryOutcome run_herald_posterior(const VerifyContext& ctx) {
  Tracker t(1e-12);
  for (const auto& spec : family_corpus()) {
    const auto d = ctx.build(spec);
    if (mean(d) == 0.0) continue;
    const auto posterior = posterior_given_subtraction(d).shifted(-1);
    const auto sub = subtract(d, 1).dist;
    t.record(max_abs_difference(posterior, sub), [&] { return spec.label(); });
  }
  return t.done();
}

EntryOutcome run_herald_weak_limit(const VerifyContext& ctx) {
  Tracker t(5e-3);
  for (const auto& spec : family_corpus()) {
    if (analytic_mean(spec) > 4.0 || analytic_mean(spec) == 0.0) continue;
    const auto d = ctx.build(spec);
    const auto exact = exact_heralded_conditional(d, 1e-3);
    t.record(total_variation(exact, subtract(d, 1).dist), [&] { return spec.label(); });
  }
  return t.done();
}

std::vector<CatalogEntry> make_entries() {
  using K = EvaluatorKind;
  std::vector<CatalogEntry> out;
  auto push = [&](std::string id, std::string description, K kind, std::function<EntryOutcome(const VerifyContext&)> run) {
    out.push_back({std::move(id), std::move(description), kind, std::move(run)});
  };
  push("thermal-sub-mgf", "subtracted thermal M(mu) = (1 + mu nbar)^-(l+1)", K::MgfM, run_thermal_sub_mgf);
  push("thermal-sub-pmf", "subtracted thermal negative binomial pmf", K::Pmf, run_thermal_sub_pmf);
  push("thermal-sub-moment", "subtracted thermal <n^(m)> = (m+l)!/l! nbar^m", K::Moment, run_thermal_sub_moment);
  push("thermal-add-mgf", "added thermal N(lambda) = [1 + lambda(1+nbar)]^-(l+1)", K::MgfN, run_thermal_add_mgf);
  push("thermal-add-pmf", "added thermal shifted negative binomial pmf", K::Pmf, run_thermal_add_pmf);
  push("thermal-add-moment", "added thermal <(n+1)^(-m)> = (m+l)!/l! (1+nbar)^m", K::Moment,
       run_thermal_add_moment);
  push("thermal-shift-duality", "subtracted thermal shifted by l equals added thermal", K::Property,
       run_thermal_shift_duality);
  push("coherent-sub-invariance", "subtraction leaves coherent statistics unchanged", K::Pmf,
       run_coherent_sub_invariance);
  push("coherent-add-mgf", "added coherent N(lambda), Laguerre form", K::MgfN, run_coherent_add_mgf);
  push("coherent-add-pmf", "added coherent shifted-Poisson mixtures (l = 1, 2)", K::Pmf, run_coherent_add_pmf);
  push("coherent-add-mean", "added coherent <n+1> via Laguerre ratio", K::Moment, run_coherent_add_mean);
  push("fock-sub-mgf", "subtracted Fock M(mu) = (1-mu)^(N-l)", K::MgfM, run_fock_sub_mgf);
  push("fock-add-mgf", "added Fock N(lambda) = (1+lambda)^-(N+l+1)", K::MgfN, run_fock_add_mgf);
  push("squeezed-sub-mgf", "subtracted squeezed vacuum M(mu), l = 1, 2", K::MgfM, run_squeezed_sub_mgf);
  push("squeezed-sub-checkpoints", "subtracted squeezed vacuum M values 0, -1, +1", K::Property,
       run_squeezed_checkpoints);
  push("cat-sub-mgf", "subtracting l photons flips cat parity iff l is odd", K::MgfM, run_cat_sub_mgf);
  push("cat-sub-parity", "cat parity flips sign under one subtraction, not two", K::Property, run_cat_parity_flip);
  push("cat-moments", "cat factorial and negative factorial moments (tanh/coth)", K::Moment, run_cat_moments);
  push("state-mgf-M", "series M(mu) equals closed form for every family", K::MgfM,
       [](const VerifyContext& c) { return run_state_mgf(c, MgfKind::M); });
  push("state-mgf-N", "series N(lambda) equals closed form for every family", K::MgfN,
       [](const VerifyContext& c) { return run_state_mgf(c, MgfKind::N); });
  push("state-parity-identity", "M(2) = -N(-2) = P(even) - P(odd)", K::Property, run_parity_identity);
  push("state-mgf-duality", "N(lambda) = M(lambda/(1+lambda)) / (1+lambda)", K::Property, run_mgf_duality);
  push("binomial-sub-closure", "subtracting from a binomial state lowers M", K::Pmf, run_binomial_closure);
  push("negbinomial-add-closure", "adding to a negative binomial state raises M", K::Pmf,
       run_negbinomial_closure);
  push("agarwal-mean", "Agarwal <n+1> = (M+1)/eta - M and shift relation", K::Moment, run_agarwal_mean);
  push("channel-attenuation-mgf", "attenuated M(mu) = M(eta mu)", K::MgfM, run_attenuation_law);
  push("channel-amplification-mgf", "amplified N(lambda) = N(G lambda)", K::MgfN, run_amplification_law);
  push("ops-derivative-theorem", "operated MGFs are normalized l-th derivatives", K::Property,
       run_derivative_theorems);
  push("ops-addition-bound", "l additions raise the mean by at least l; equality iff point mass", K::Property,
       run_addition_bound);
  push("ops-covariance-inequality", "covariance double sum is non-negative", K::Property,
       run_covariance_inequality);
  push("herald-posterior", "subtraction posterior shifted down equals one-photon subtraction", K::Property,
       run_herald_posterior);
  push("herald-weak-limit", "exactly-one-click conditional approaches subtraction at p = 1e-3", K::Property,
       run_herald_weak_limit);
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> registry = make_entries();
  return registry;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  // Iterative wildcard match with single-star backtracking.
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<const CatalogEntry*> select(std::string_view pattern) {
  std::vector<const CatalogEntry*> out;
  for (const auto& entry : entries()) {
    if (pattern.empty() || glob_match(pattern, entry.id)) out.push_back(&entry);
  }
  return out;
}

FigureTable figure_data(int id) {
  FigureTable table;
  table.id = id;
  PhotonNumberDistribution initial;
  PhotonNumberDistribution first;
  PhotonNumberDistribution second;
  switch (id) {
    case 3:
      initial = build_distribution(StateSpec::coherent(1.0));
      first = add(initial, 1).dist;
      second = add(initial, 2).dist;
      table.columns = {"n", "P_initial", "P_after_first_op", "P_after_second_op"};
      break;
    case 4:
      initial = build_distribution(StateSpec::thermal(1.0));
      first = subtract(initial, 1).dist;
      second = add(initial, 1).dist;
      table.columns = {"n", "P_initial", "P_after_first_op", "P_after_second_op"};
      break;
    case 5:
      initial = build_distribution(StateSpec::thermal(1.0));
      first = subtract(initial, 2).dist;
      second = add(initial, 2).dist;
      table.columns = {"n", "P_initial", "P_after_first_op", "P_after_second_op"};
      break;
    default:
      throw ParameterError("figure id must be 3, 4 or 5");
  }
  for (std::size_t n = 0; n <= 12; ++n) {
    table.rows.push_back({static_cast<double>(n), initial[n], first[n], second[n]});
  }
  return table;
}

}  // namespace photonstat::catalog
