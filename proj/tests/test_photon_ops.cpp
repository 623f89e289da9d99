#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/genfunc.hpp"
#include "photonstat/moments.hpp"
#include "photonstat/photon_ops.hpp"

using namespace photonstat;
using doctest::Approx;

namespace {

PhotonNumberDistribution from(const std::vector<double>& p) { return PhotonNumberDistribution(p, 0.0, true); }

}  // namespace

TEST_CASE("subtract examples") {
  const auto coh = build_distribution(StateSpec::coherent(1));
  for (unsigned l = 1; l <= 3; ++l) {
    const auto s = subtract(coh, l).dist;
    for (std::size_t n = 0; n < s.size(); ++n) CHECK(std::fabs(s[n] - coh[n]) < 1e-14);
  }
  const auto f = subtract(build_distribution(StateSpec::fock(3)), 2).dist;
  CHECK(f.size() == 2);
  CHECK(f[1] == Approx(1.0));
  CHECK(f[0] == 0.0);
  const auto th = subtract(build_distribution(StateSpec::thermal(1)), 1);
  CHECK(th.dist[0] == Approx(0.25).epsilon(1e-14));
  CHECK(th.dist[1] == Approx(0.25).epsilon(1e-14));
  CHECK(th.dist[2] == Approx(0.1875).epsilon(1e-14));
  CHECK(th.record.kind == OpKind::Subtract);
  CHECK(th.record.count == 1);
  CHECK(th.record.success_norm == Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(subtract(build_distribution(StateSpec::fock(0)), 1), ImpossibleEventError);
  CHECK_THROWS_AS(subtract(build_distribution(StateSpec::fock(2)), 3), ImpossibleEventError);
  CHECK_THROWS_AS(subtract(build_distribution(StateSpec::binomial(0.5, 2)), 3), ImpossibleEventError);
}

TEST_CASE("add examples") {
  const auto f = add(build_distribution(StateSpec::fock(1)), 2).dist;
  CHECK(f.size() == 4);
  CHECK(f[3] == Approx(1.0));
  const auto th = add(build_distribution(StateSpec::thermal(1)), 1);
  CHECK(th.dist[0] == 0.0);
  CHECK(th.dist[1] == Approx(0.25).epsilon(1e-14));
  CHECK(th.dist[2] == Approx(0.25).epsilon(1e-14));
  CHECK(th.record.success_norm >= 1.0);
  CHECK(th.record.success_norm == Approx(2.0).epsilon(1e-13));
  CHECK(mean(add(build_distribution(StateSpec::coherent(1)), 1).dist) == Approx(2.5).epsilon(1e-13));
  CHECK(add(build_distribution(StateSpec::thermal(1)), 1).dist.truncation() ==
        build_distribution(StateSpec::thermal(1)).truncation() + 1);
}

TEST_CASE("operations agree with the operator-definition oracle") {
  for (const auto& p : oracle::random_pmfs(50, 25, 11)) {
    const auto d = from(p);
    oracle::Vec ref(p.begin(), p.end());
    for (unsigned l = 1; l <= 3; ++l) {
      const auto a = add(d, l).dist;
      const auto ra = oracle::add(ref, l);
      for (std::size_t n = 0; n < ra.size(); ++n) CHECK(std::fabs(a[n] - static_cast<double>(ra[n])) <= 1e-14);
      if (oracle::factorial_moment(ref, l) > 0) {
        const auto s = subtract(d, l).dist;
        const auto rs = oracle::subtract(ref, l);
        for (std::size_t n = 0; n < rs.size(); ++n) CHECK(std::fabs(s[n] - static_cast<double>(rs[n])) <= 1e-13);
      }
    }
  }
}

TEST_CASE("moment transformation ratios") {
  const auto t1 = build_distribution(StateSpec::thermal(1));
  const auto t2 = build_distribution(StateSpec::thermal(2));
  CHECK(subtracted_factorial_moment(t1, 1, 1) == Approx(2.0).epsilon(1e-12));
  CHECK(subtracted_factorial_moment(t2, 2, 2) == Approx(48.0).epsilon(1e-11));
  CHECK(subtracted_factorial_moment(build_distribution(StateSpec::coherent(1)), 3, 2) == Approx(1.0).epsilon(1e-12));
  CHECK(added_negative_factorial_moment(t1, 1, 1) == Approx(4.0).epsilon(1e-12));
  CHECK(added_negative_factorial_moment(t1, 2, 2) == Approx(48.0).epsilon(1e-11));
  CHECK(added_negative_factorial_moment(build_distribution(StateSpec::fock(0)), 1, 1) == Approx(2.0));
  CHECK_THROWS_AS(subtracted_factorial_moment(build_distribution(StateSpec::fock(0)), 1, 1), ImpossibleEventError);

  for (const auto& spec : {StateSpec::thermal(0.7), StateSpec::squeezed(1.1), StateSpec::cat_odd(2.0),
                           StateSpec::negbinomial(0.4, 2)}) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l).dist;
      const auto a = add(d, l).dist;
      for (unsigned m = 0; m <= 4; ++m) {
        CHECK(subtracted_factorial_moment(d, l, m) == Approx(factorial_moment(s, m)).epsilon(1e-10));
        CHECK(added_negative_factorial_moment(d, l, m) == Approx(negative_factorial_moment(a, m)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("mean shift analysis") {
  const auto mix = mean_shift_analysis(from({0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.5}));
  CHECK(mix.mean_before == Approx(5.0));
  REQUIRE(mix.mean_after_sub);
  CHECK(*mix.mean_after_sub == Approx(9.0));
  const auto th = mean_shift_analysis(build_distribution(StateSpec::thermal(1)));
  REQUIRE(th.g2);
  CHECK(*th.g2 == Approx(2.0).epsilon(1e-12));
  CHECK(*th.mean_after_sub == Approx(2.0).epsilon(1e-12));
  const auto fock = mean_shift_analysis(build_distribution(StateSpec::fock(5)));
  CHECK(fock.mean_after_add == 6.0);
  const auto vac = mean_shift_analysis(build_distribution(StateSpec::fock(0)));
  CHECK_FALSE(vac.mean_after_sub.has_value());
  CHECK_FALSE(vac.g2.has_value());
  CHECK(vac.mean_after_add == Approx(1.0));
}

TEST_CASE("predicted added mean and the g2 criterion on random distributions") {
  for (const auto& p : oracle::random_pmfs(200, 30, 23)) {
    const auto d = from(p);
    const auto r = mean_shift_analysis(d);
    CHECK(r.predicted_add_mean == Approx(mean(add(d, 1).dist)).epsilon(1e-10));
    if (r.g2 && std::fabs(*r.g2 - 1.0) > 1e-8) {
      REQUIRE(r.mean_after_sub);
      CHECK((*r.mean_after_sub > r.mean_before) == (*r.g2 > 1.0));
    }
  }
}

TEST_CASE("addition raises the mean by at least l") {
  for (const auto& p : oracle::random_pmfs(200, 40, 5)) {
    const auto d = from(p);
    for (unsigned l = 1; l <= 4; ++l) {
      const double gain = mean(add(d, l).dist) - mean(d);
      CHECK(gain >= l - 1e-10);
      if (!d.is_point_mass()) CHECK(gain > l + 1e-10);
    }
  }
  for (std::uint64_t n : {0u, 3u, 9u}) {
    const auto d = build_distribution(StateSpec::fock(n));
    CHECK(mean(add(d, 2).dist) - mean(d) == Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("covariance double sum is non-negative") {
  for (const auto& p : oracle::random_pmfs(100, 40, 99)) {
    for (unsigned l = 1; l <= 4; ++l) {
      long double sum = 0;
      for (std::size_t m = 0; m < p.size(); ++m) {
        for (std::size_t n = 0; n < p.size(); ++n) {
          long double bm = 1, bn = 1;
          for (unsigned j = 1; j <= l; ++j) {
            bm *= m + j;
            bn *= n + j;
          }
          sum += p[n] * p[m] * (static_cast<long double>(m) - n) * (bm - bn);
        }
      }
      CHECK(sum >= -1e-12);
    }
  }
}

TEST_CASE("cat parity flips under odd subtraction") {
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    for (bool even : {true, false}) {
      const auto d = build_distribution(even ? StateSpec::cat_even(x) : StateSpec::cat_odd(x));
      CHECK(parity(subtract(d, 1).dist) == Approx(-parity(d)).epsilon(1e-12));
      CHECK(parity(subtract(d, 2).dist) == Approx(parity(d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("squeezed subtraction checkpoints") {
  for (double nbar : {0.2, 1.0, 5.0}) {
    const auto d = build_distribution(StateSpec::squeezed(nbar));
    CHECK(std::fabs(mgf_M(subtract(d, 1).dist, 1.0).value) < 1e-9);
    CHECK(mgf_M(subtract(d, 1).dist, 2.0).value == Approx(-1.0).epsilon(1e-9));
    CHECK(mgf_M(subtract(d, 2).dist, 2.0).value == Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("operated MGFs equal normalized derivatives of the closed forms") {
  for (const auto& spec : {StateSpec::thermal(1), StateSpec::coherent(0.7), StateSpec::squeezed(0.4),
                           StateSpec::cat_odd(1.3)}) {
    CAPTURE(spec.label());
    const auto d = build_distribution(spec);
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l);
      const auto a = add(d, l);
      const double sign = l % 2 ? -1.0 : 1.0;
      for (double arg : {0.0, 0.2, 0.6}) {
        const auto dm = richardson_derivative([&](double mu) { return closed_form_M(spec, mu); }, arg, l);
        const auto dn = richardson_derivative([&](double la) { return closed_form_N(spec, la); }, arg, l);
        CHECK(mgf_M(s.dist, arg).value == Approx(sign * dm.value / s.record.success_norm).epsilon(1e-6));
        CHECK(mgf_N(a.dist, arg).value == Approx(sign * dn.value / a.record.success_norm).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("thermal subtraction and addition differ by a shift") {
  for (double nbar : {0.5, 1.0, 3.0}) {
    const auto d = build_distribution(StateSpec::thermal(nbar));
    for (unsigned l = 1; l <= 3; ++l) {
      const auto s = subtract(d, l).dist;
      const auto a = add(d, l).dist;
      const auto up = s.shifted(l);
      for (std::size_t n = 0; n < up.size(); ++n) CHECK(std::fabs(up[n] - a[n]) <= 1e-12);
      CHECK(mean(a) - mean(s) == Approx(l).epsilon(1e-12));
      CHECK(variance(a) == Approx(variance(s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("subtraction keeps a certified tail for infinite support") {
  const auto d = build_distribution(StateSpec::thermal(2));
  const auto s = subtract(d, 2).dist;
  CHECK_FALSE(s.finite_support());
  CHECK(s.tail_bound() < 1e-12);
  CHECK(s.truncation() == d.truncation() - 2);
  CHECK(s.total() == Approx(1.0).epsilon(1e-12));
}
