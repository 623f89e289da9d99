#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "photonstat/catalog.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/genfunc.hpp"

using namespace photonstat;
using namespace photonstat::catalog;
using doctest::Approx;

TEST_CASE("thermal closed forms") {
  CHECK(thermal_sub_M(1, 1.0, 1.0) == Approx(0.25));
  CHECK(thermal_sub_pmf(2, 1.0, 0) == Approx(0.125));
  CHECK(thermal_sub_M(0, 1.3, 0.4) == Approx(closed_form_M(StateSpec::thermal(1.3), 0.4)));
  CHECK(thermal_add_N(1, 1.0, 1.0) == Approx(1.0 / 9.0));
  CHECK(thermal_add_pmf(1, 1.0, 0) == 0.0);
  CHECK(thermal_add_N(0, 1.3, 0.4) == Approx(closed_form_N(StateSpec::thermal(1.3), 0.4)));
  CHECK(thermal_sub_factorial_moment(2, 2.0, 2) == Approx(48.0));
  CHECK(thermal_add_negative_factorial_moment(1, 1.0, 1) == Approx(4.0));
  CHECK_THROWS_AS(thermal_sub_M(1, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(thermal_sub_M(1, 0.0, 0.5), ImpossibleEventError);
  // pmfs sum to one.
  double s = 0, a = 0;
  for (std::size_t n = 0; n < 200; ++n) {
    s += thermal_sub_pmf(3, 1.5, n);
    a += thermal_add_pmf(3, 1.5, n);
  }
  CHECK(s == Approx(1.0).epsilon(1e-12));
  CHECK(a == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent addition closed forms") {
  CHECK(coherent_add_mean_plus_one(1, 1.0) == Approx(3.5));
  CHECK(coherent_add_pmf(1, 1.0, 0) == 0.0);
  CHECK(coherent_add_pmf(2, 1.0, 1) == 0.0);
  CHECK_THROWS_AS(coherent_add_pmf(3, 1.0, 4), ParameterError);
  // Adding to vacuum gives the Fock state.
  CHECK(coherent_add_pmf(1, 0.0, 1) == Approx(1.0));
  CHECK(coherent_add_N(1, 0.0, 1.0) == Approx(fock_add_N(0, 1, 1.0)));
  // Against the operator-definition oracle.
  const auto p = oracle::poisson(1.3L, 80);
  for (unsigned l = 1; l <= 2; ++l) {
    const auto ref = oracle::add(p, l);
    for (std::size_t n = 0; n < 30; ++n) CHECK(coherent_add_pmf(l, 1.3, n) == Approx(static_cast<double>(ref[n])).epsilon(1e-12));
    CHECK(coherent_add_N(l, 1.3, 0.7) == Approx(static_cast<double>(oracle::mgf_N(ref, 0.7L))).epsilon(1e-12));
    CHECK(coherent_add_mean_plus_one(l, 1.3) ==
          Approx(static_cast<double>(oracle::negative_factorial_moment(ref, 1))).epsilon(1e-12));
  }
  // Mean increment limits: +1 for small |alpha|^2, +2 for large.
  CHECK(coherent_add_mean_plus_one(1, 1e-6) - 1 - 1e-6 == Approx(1.0).epsilon(1e-5));
  CHECK(coherent_add_mean_plus_one(1, 1e6) - 1 - 1e6 == Approx(2.0).epsilon(1e-5));
}

TEST_CASE("Fock, squeezed and cat closed forms") {
  CHECK(fock_sub_M(3, 1, 1.0) == 0.0);
  CHECK(fock_sub_M(2, 2, 0.37) == 1.0);
  CHECK(fock_add_N(1, 1, 1.0) == Approx(0.125));
  CHECK_THROWS_AS(fock_sub_M(1, 2, 0.5), ImpossibleEventError);
  CHECK(squeezed_sub_M(1, 1.0, 1.0) == 0.0);
  CHECK(squeezed_sub_M(1, 1.0, 2.0) == Approx(-1.0));
  CHECK(squeezed_sub_M(2, 1.0, 0.0) == Approx(1.0));
  CHECK(squeezed_sub_M(2, 1.0, 2.0) == Approx(1.0));
  CHECK_THROWS_AS(squeezed_sub_M(1, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(squeezed_sub_M(3, 1.0, 0.5), ParameterError);
  // Squeezed against the oracle.
  const auto sq = oracle::squeezed(0.8L, 200);
  for (unsigned l = 1; l <= 2; ++l) {
    const auto ref = oracle::subtract(sq, l);
    for (double mu : {0.0, 0.5, 1.0, 1.5}) {
      CHECK(squeezed_sub_M(l, 0.8, mu) == Approx(static_cast<double>(oracle::mgf_M(ref, mu))).epsilon(1e-12));
    }
  }
  CHECK(cat_sub_M(1, 1.0, true, 0.5) == Approx(closed_form_M(StateSpec::cat_odd(1.0), 0.5)));
  CHECK(cat_sub_M(2, 1.0, true, 0.5) == Approx(closed_form_M(StateSpec::cat_even(1.0), 0.5)));
  CHECK(cat_sub_M(3, 1.0, false, 0.0) == Approx(1.0));
  const auto even = cat_moments(true, 1.0);
  CHECK(even.factorial_1 == Approx(0.7615942).epsilon(1e-7));
  CHECK(even.factorial_2 == Approx(1.0));
  CHECK(cat_moments(false, 1.0).factorial_1 == Approx(1.3130353).epsilon(1e-7));
  CHECK_THROWS_AS(cat_moments(false, 0.0), ParameterError);
  const auto cat = oracle::cat(1.4L, false, 100);
  const auto odd = cat_moments(false, 1.4);
  CHECK(odd.negative_factorial_1 == Approx(static_cast<double>(oracle::negative_factorial_moment(cat, 1))).epsilon(1e-12));
  CHECK(odd.negative_factorial_2 == Approx(static_cast<double>(oracle::negative_factorial_moment(cat, 2))).epsilon(1e-12));
}

TEST_CASE("registry") {
  const auto& all = entries();
  CHECK(all.size() >= 25);
  std::set<std::string> ids;
  for (const auto& e : all) {
    CHECK(ids.insert(e.id).second);
    CHECK_FALSE(e.description.empty());
    CHECK(e.run);
  }
  CHECK(select("").size() == all.size());
  const auto thermal = select("thermal-*");
  CHECK(thermal.size() >= 6);
  for (const auto* e : thermal) CHECK(e->id.rfind("thermal-", 0) == 0);
  CHECK(select("no-such-entry").empty());
  CHECK(glob_match("a*c", "abbbc"));
  CHECK(glob_match("a?c", "abc"));
  CHECK_FALSE(glob_match("a?c", "abbc"));
  CHECK(glob_match("*", ""));
  CHECK(glob_match("*-mgf", "thermal-sub-mgf"));
  CHECK(evaluator_name(EvaluatorKind::MgfM) == "mgf_M");
}

TEST_CASE("every catalog entry passes") {
  const VerifyContext ctx;
  for (const auto& e : entries()) {
    CAPTURE(e.id);
    const auto out = e.run(ctx);
    CAPTURE(out.worst_case);
    CAPTURE(out.max_error);
    CHECK(out.points > 0);
    CHECK(out.passed());
  }
}

TEST_CASE("a tampered P(0) is noticed") {
  VerifyContext ctx;
  ctx.tamper_p0 = 1e-6;
  std::size_t failures = 0;
  for (const auto& e : entries()) {
    if (!e.run(ctx).passed()) ++failures;
  }
  CHECK(failures >= 5);
}

TEST_CASE("figure data") {
  const auto f4 = figure_data(4);
  REQUIRE(f4.rows.size() == 13);
  CHECK(f4.columns == std::vector<std::string>{"n", "P_initial", "P_after_first_op", "P_after_second_op"});
  CHECK(f4.rows[0][1] == Approx(0.5).epsilon(1e-14));
  CHECK(f4.rows[0][2] == Approx(0.25).epsilon(1e-14));
  CHECK(f4.rows[0][3] == 0.0);
  const auto f3 = figure_data(3);
  CHECK(f3.rows[0][1] == Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(f3.rows[0][2] == 0.0);
  CHECK(f3.rows[0][3] == 0.0);
  const auto f5 = figure_data(5);
  CHECK(f5.rows[1][1] == Approx(0.25).epsilon(1e-14));
  CHECK(f5.rows[1][2] == Approx(3.0 / 16.0).epsilon(1e-14));
  CHECK(f5.rows[1][3] == 0.0);
  CHECK_THROWS_AS(figure_data(2), ParameterError);
}
