#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "photonstat/distribution.hpp"
#include "photonstat/state.hpp"

namespace photonstat::catalog {

// Closed forms for operated states. Each is independent of the generic
// operations in photon_ops/channels and exists to be compared against them.

/// l-photon-subtracted thermal state: M = (1 + mu nbar)^-(l+1).
double thermal_sub_M(unsigned count, double nbar, double mu);
/// Negative binomial P(n) = nbar^n / (1+nbar)^(n+l+1) C(l+n, l).
double thermal_sub_pmf(unsigned count, double nbar, std::size_t n);
/// (m+l)!/l! nbar^m.
double thermal_sub_factorial_moment(unsigned count, double nbar, unsigned m);

/// l-photon-added thermal state: N = [1 + lambda (1 + nbar)]^-(l+1).
double thermal_add_N(unsigned count, double nbar, double lambda);
/// P(n) = nbar^(n-l) / (1+nbar)^(n+1) C(n, l) for n >= l, else 0.
double thermal_add_pmf(unsigned count, double nbar, std::size_t n);
/// (m+l)!/l! (1 + nbar)^m.
double thermal_add_negative_factorial_moment(unsigned count, double nbar, unsigned m);

/// l-photon-added coherent state, Laguerre form:
///   N = exp(-lambda x/(1+lambda)) L_l(-x/(1+lambda)) / ((1+lambda)^(l+1) L_l(-x)).
double coherent_add_N(unsigned count, double alpha_sq, double lambda);
/// Shifted-Poisson mixtures; only l in {1, 2} have a printed closed form.
double coherent_add_pmf(unsigned count, double alpha_sq, std::size_t n);
/// <n + 1> after l additions: |alpha|^2 + 2l + 1 - l L_{l-1}(-x) / L_l(-x).
double coherent_add_mean_plus_one(unsigned count, double alpha_sq);

/// (1 - mu)^(N - l); throws ImpossibleEventError when l > N.
double fock_sub_M(std::uint64_t n, unsigned count, double mu);
/// (1 + lambda)^-(N + l + 1).
double fock_add_N(std::uint64_t n, unsigned count, double lambda);

/// Squeezed vacuum after one or two subtractions.
double squeezed_sub_M(unsigned count, double nbar, double mu);

/// Cat state after l subtractions: the parity flips iff l is odd.
double cat_sub_M(unsigned count, double alpha_sq, bool even, double mu);

struct CatMoments {
  double factorial_1 = 0.0;
  double factorial_2 = 0.0;
  double negative_factorial_1 = 0.0;
  double negative_factorial_2 = 0.0;
};
/// tanh forms for the even cat, coth forms for the odd cat.
CatMoments cat_moments(bool even, double alpha_sq);

// ---------------------------------------------------------------------------
// Differential-test registry

enum class EvaluatorKind { MgfM, MgfN, Pmf, Moment, Property };

std::string_view evaluator_name(EvaluatorKind kind);

/// Settings shared by every entry. `tamper_p0` adds a perturbation to P(0) of
/// every distribution the generic pipeline builds; it exists to confirm the
/// suite notices a corrupted distribution.
struct VerifyContext {
  double tail_epsilon = kDefaultTailEpsilon;
  double tamper_p0 = 0.0;

  PhotonNumberDistribution build(const StateSpec& spec) const;
};

struct EntryOutcome {
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t points = 0;
  std::string worst_case;

  bool passed() const { return points > 0 && max_error <= tolerance; }
};

struct CatalogEntry {
  std::string id;
  std::string description;
  EvaluatorKind kind;
  std::function<EntryOutcome(const VerifyContext&)> run;
};

const std::vector<CatalogEntry>& entries();

/// Entries whose id matches a glob pattern (`*` and `?`); empty pattern
/// selects everything.
std::vector<const CatalogEntry*> select(std::string_view pattern);

bool glob_match(std::string_view pattern, std::string_view text);

// ---------------------------------------------------------------------------
// Figure data

/// Rows n = 0..12 of (P_initial, P_after_first_op, P_after_second_op):
///   3: coherent |alpha|^2 = 1, one and two photons added
///   4: thermal nbar = 1, one photon subtracted, one photon added
///   5: thermal nbar = 1, two photons subtracted, two photons added
struct FigureTable {
  int id = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

FigureTable figure_data(int id);

}  // namespace photonstat::catalog
