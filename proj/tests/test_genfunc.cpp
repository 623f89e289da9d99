#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "photonstat/distribution.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/genfunc.hpp"
#include "photonstat/moments.hpp"

using namespace photonstat;
using doctest::Approx;

namespace {

std::vector<StateSpec> families() {
  return {StateSpec::fock(2),           StateSpec::coherent(1.5),      StateSpec::thermal(0.8),
          StateSpec::squeezed(0.6),     StateSpec::cat_even(1.2),      StateSpec::cat_odd(1.2),
          StateSpec::binomial(0.35, 5), StateSpec::negbinomial(0.55, 2), StateSpec::agarwal(0.45, 1)};
}

}  // namespace

TEST_CASE("mgf_M examples") {
  CHECK(mgf_M(build_distribution(StateSpec::thermal(1)), 1.0).value == Approx(0.5).epsilon(1e-14));
  for (const auto& spec : families()) CHECK(mgf_M(build_distribution(spec), 0.0).value == Approx(1.0).epsilon(1e-13));
  CHECK(mgf_M(build_distribution(StateSpec::squeezed(1)), 2.0).value == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mgf_N examples") {
  CHECK(mgf_N(build_distribution(StateSpec::thermal(1)), 1.0).value == Approx(1.0 / 3.0).epsilon(1e-14));
  for (const auto& spec : families()) CHECK(mgf_N(build_distribution(spec), 0.0).value == Approx(1.0).epsilon(1e-13));
  CHECK(mgf_N(build_distribution(StateSpec::coherent(1)), -2.0).value == Approx(-std::exp(-2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(mgf_N(build_distribution(StateSpec::coherent(1)), -1.0), DomainError);
}

TEST_CASE("closed form examples") {
  CHECK(closed_form_M(StateSpec::coherent(1), 1.0) == Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(closed_form_M(StateSpec::cat_even(1), 0.0) == Approx(1.0));
  CHECK(closed_form_N(StateSpec::agarwal(0.5, 1), 1.0) == Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(closed_form_M(StateSpec::thermal(1), -1.0), DomainError);
  CHECK_THROWS_AS(closed_form_M(StateSpec::squeezed(1), -1.0), DomainError);
  CHECK_THROWS_AS(closed_form_N(StateSpec::thermal(1), -1.0), DomainError);
}

TEST_CASE("series agree with the recurrence oracle") {
  const auto p = oracle::poisson(1.5L, 60);
  const auto d = build_distribution(StateSpec::coherent(1.5));
  for (double mu : {0.0, 0.3, 1.0, 1.7, 2.0}) {
    CHECK(mgf_M(d, mu).value == Approx(static_cast<double>(oracle::mgf_M(p, mu))).epsilon(1e-13));
  }
  for (double lambda : {-0.4, 0.0, 0.5, 3.0}) {
    CHECK(mgf_N(d, lambda).value == Approx(static_cast<double>(oracle::mgf_N(p, lambda))).epsilon(1e-13));
  }
}

TEST_CASE("series match closed forms over the argument grids") {
  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (int i = 0; i <= 20; ++i) {
      const double mu = 0.1 * i;
      CHECK(mgf_M(d, mu).value == Approx(closed_form_M(spec, mu)).epsilon(1e-9));
    }
    for (int i = 0; i <= 20; ++i) {
      const double lambda = 0.25 * i;
      CHECK(mgf_N(d, lambda).value == Approx(closed_form_N(spec, lambda)).epsilon(1e-9));
    }
  }
}

TEST_CASE("duality N(lambda) = M(lambda/(1+lambda))/(1+lambda)") {
  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (double lambda : {-0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 5.0}) {
      CAPTURE(lambda);
      const double mu = lambda / (1.0 + lambda);
      // Squeezed states have no real value past the branch point.
      if (spec.family == Family::SqueezedVacuum && 1 + 2 * mu * spec.intensity - mu * mu * spec.intensity <= 0) {
        CHECK_THROWS_AS(closed_form_N(spec, lambda), DomainError);
        CHECK_FALSE(mgf_N(d, lambda).converged);
        continue;
      }
      if (spec.family == Family::NegBinomial && lambda + spec.eta == 0) continue;
      CHECK(closed_form_N(spec, lambda) == Approx(closed_form_M(spec, mu) / (1.0 + lambda)).epsilon(1e-10));
      const auto n = mgf_N(d, lambda);
      const auto m = mgf_M(d, mu);
      if (n.converged && m.converged) CHECK(n.value == Approx(m.value / (1.0 + lambda)).epsilon(1e-10));
    }
  }
}

TEST_CASE("parity identity M(2) = -N(-2) = parity") {
  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    const double par = parity(d);
    CHECK(mgf_M(d, 2.0).value == Approx(par).epsilon(1e-10));
    CHECK(-mgf_N(d, -2.0).value == Approx(par).epsilon(1e-10));
  }
}

TEST_CASE("divergent series are flagged") {
  const auto th = build_distribution(StateSpec::thermal(1));
  // |1 - mu| = 2 exceeds the geometric decay rate 1/2.
  CHECK_FALSE(mgf_M(th, 3.0).converged);
  CHECK(mgf_M(th, 1.0).converged);
  // (1+lambda)^-1 = 4 against decay 1/2.
  CHECK_FALSE(mgf_N(th, -0.75).converged);
  // Finite support always converges.
  CHECK(mgf_M(build_distribution(StateSpec::fock(3)), 5.0).converged);
  CHECK(mgf_M(build_distribution(StateSpec::fock(3)), 5.0).value == Approx(-64.0));
}

TEST_CASE("factorial-moment expansion of M and N") {
  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    double m_sum = 0.0, n_sum = 0.0, f = 1.0;
    for (unsigned m = 0; m < 12; ++m) {
      if (m > 0) f *= m;
      m_sum += std::pow(-0.1, m) * factorial_moment(d, m) / f;
    }
    // The N expansion converges more slowly (ratio up to 0.1/eta per term).
    f = 1.0;
    for (unsigned m = 0; m < 24; ++m) {
      if (m > 0) f *= m;
      n_sum += std::pow(-0.1, m) * negative_factorial_moment(d, m) / f;
    }
    CHECK(m_sum == Approx(closed_form_M(spec, 0.1)).epsilon(1e-8));
    CHECK(n_sum == Approx(closed_form_N(spec, 0.1)).epsilon(1e-8));
  }
}

TEST_CASE("moments from closed-form derivatives") {
  CHECK(moments_from_closed_form(StateSpec::thermal(1), MgfKind::M, 1).value == Approx(1.0).epsilon(1e-7));
  CHECK(moments_from_closed_form(StateSpec::coherent(1), MgfKind::N, 2).value == Approx(7.0).epsilon(1e-7));
  CHECK(moments_from_closed_form(StateSpec::fock(0), MgfKind::M, 1).value == Approx(0.0).epsilon(1e-7).scale(1));
  CHECK_THROWS_AS(moments_from_closed_form(StateSpec::thermal(1), MgfKind::M, 7), ParameterError);

  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (unsigned m = 1; m <= 6; ++m) {
      CAPTURE(m);
      const double fm = factorial_moment(d, m);
      const double nfm = negative_factorial_moment(d, m);
      const auto em = moments_from_closed_form(spec, MgfKind::M, m);
      const auto en = moments_from_closed_form(spec, MgfKind::N, m);
      const double rm = std::fabs(em.value - fm) / std::max(1.0, std::fabs(fm));
      const double rn = std::fabs(en.value - nfm) / std::max(1.0, std::fabs(nfm));
      if (m <= 4) {
        CHECK(em.converged);
        CHECK(en.converged);
        CHECK(rm <= 1e-6);
        CHECK(rn <= 1e-6);
      } else {
        // High orders: either converged to 1e-6 or honestly flagged.
        CHECK((!em.converged || rm <= 1e-6));
        CHECK((!en.converged || rn <= 1e-6));
      }
    }
  }
}

TEST_CASE("raw moments") {
  CHECK(raw_moment(build_distribution(StateSpec::thermal(1)), 2) == Approx(3.0).epsilon(1e-12));
  CHECK(raw_moment(build_distribution(StateSpec::fock(4)), 2) == 16.0);
  CHECK(raw_moment(build_distribution(StateSpec::coherent(1)), 2) == Approx(2.0).epsilon(1e-12));
  CHECK(raw_moment(build_distribution(StateSpec::coherent(1)), 0) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("probabilities via derivatives") {
  CHECK(probability_via_derivative(StateSpec::coherent(1), 0).value == Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(probability_via_derivative(StateSpec::fock(2), 2).value == Approx(1.0).epsilon(1e-6));
  CHECK(probability_via_derivative(StateSpec::thermal(1), 1).value == Approx(0.25).epsilon(1e-6));
  for (const auto& spec : families()) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (unsigned n = 0; n <= 3; ++n) {
      const auto est = probability_via_derivative(spec, n);
      CHECK(std::fabs(est.value - d[n]) <= 1e-6);
    }
  }
}

TEST_CASE("N at large lambda recovers P(0) on finite support") {
  // (1+lambda) N(lambda) -> P(0) as lambda -> infinity.
  for (std::uint64_t n : {0u, 1u, 2u, 3u}) {
    const auto d = build_distribution(StateSpec::binomial(0.4, n));
    const double lambda = 1e7;
    CHECK((1 + lambda) * mgf_N(d, lambda).value == Approx(d[0]).epsilon(1e-6));
  }
}

TEST_CASE("richardson on polynomials and exponentials") {
  auto cubic = [](double x) { return x * x * x; };
  CHECK(richardson_derivative(cubic, 1.0, 1).value == Approx(3.0).epsilon(1e-10));
  CHECK(richardson_derivative(cubic, 1.0, 2).value == Approx(6.0).epsilon(1e-9));
  auto e = [](double x) { return std::exp(x); };
  for (unsigned k = 1; k <= 4; ++k) CHECK(richardson_derivative(e, 0.5, k).value == Approx(std::exp(0.5)).epsilon(1e-7));
}
