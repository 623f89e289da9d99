#pragma once

#include <functional>

#include "photonstat/distribution.hpp"
#include "photonstat/state.hpp"

namespace photonstat {

/// M(mu) = Sum_n (1-mu)^n P(n)  and  N(lambda) = Sum_n (1+lambda)^-(n+1) P(n).
enum class MgfKind { M, N };

/// A generating-function value computed from a truncated distribution.
struct MgfPoint {
  double argument = 0.0;
  double value = 0.0;
  /// False when the series grows faster than the distribution decays, in
  /// which case `value` is only the truncated partial sum.
  bool converged = true;
  /// Bound on the contribution of the omitted tail (when converged).
  double truncation_error = 0.0;
};

MgfPoint mgf_M(const PhotonNumberDistribution& dist, double mu);

/// Throws DomainError at lambda = -1.
MgfPoint mgf_N(const PhotonNumberDistribution& dist, double lambda);

inline MgfPoint mgf(const PhotonNumberDistribution& dist, MgfKind kind, double arg) {
  return kind == MgfKind::M ? mgf_M(dist, arg) : mgf_N(dist, arg);
}

/// Analytic generating functions of the state families. Independent of any
/// truncation; throw DomainError at poles and branch points.
double closed_form_M(const StateSpec& spec, double mu);
double closed_form_N(const StateSpec& spec, double lambda);

inline double closed_form(const StateSpec& spec, MgfKind kind, double arg) {
  return kind == MgfKind::M ? closed_form_M(spec, arg) : closed_form_N(spec, arg);
}

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// order-th derivative of f at x by central differences on a Richardson
/// tableau of halving steps (up to 10 rows), stopping when the diagonal stops
/// improving. `base_step` defaults to 0.4 / order; the actual h is
/// base_step * (1 + |x|). `converged` is false when the error estimate
/// exceeds 2e-7 relative, which is typical above order 4.
DerivativeEstimate richardson_derivative(const std::function<double(double)>& f, double x,
                                         unsigned order, double base_step = 0.0);

/// (-d/darg)^m of the closed-form generating function at 0: the factorial
/// moment for M, the negative factorial moment for N. Requires m <= 6.
DerivativeEstimate moments_from_closed_form(const StateSpec& spec, MgfKind kind, unsigned m);

/// Sum_n n^m P(n).
double raw_moment(const PhotonNumberDistribution& dist, unsigned m);

/// P(n) = (1/n!) (-d/dmu)^n M(mu) at mu = 1. Requires n <= 6.
DerivativeEstimate probability_via_derivative(const StateSpec& spec, unsigned n);

}  // namespace photonstat
