#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace photonstat {

enum class Family {
  Fock,
  Coherent,
  Thermal,
  SqueezedVacuum,
  CatEven,
  CatOdd,
  Binomial,
  NegBinomial,
  AgarwalNegBinomial,
};

/// CLI-facing names: fock, coherent, thermal, squeezed, cat-even, cat-odd,
/// binomial, negbinomial, agarwal.
std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// A single-mode state family together with its parameters.
///
/// Only the fields relevant to the family are meaningful:
///   Fock                        -> count (N)
///   Coherent, CatEven, CatOdd   -> intensity (|alpha|^2)
///   Thermal, SqueezedVacuum     -> intensity (mean photon number)
///   Binomial, NegBinomial,
///   AgarwalNegBinomial          -> eta, count (M)
///
/// The squeezed vacuum is parameterized by its mean photon number rather than
/// by the squeezing parameter.
struct StateSpec {
  Family family = Family::Fock;
  std::uint64_t count = 0;
  double intensity = 0.0;
  double eta = 1.0;

  static StateSpec fock(std::uint64_t n);
  static StateSpec coherent(double alpha_sq);
  static StateSpec thermal(double nbar);
  static StateSpec squeezed(double nbar);
  static StateSpec cat_even(double alpha_sq);
  static StateSpec cat_odd(double alpha_sq);
  static StateSpec binomial(double eta, std::uint64_t m);
  static StateSpec negbinomial(double eta, std::uint64_t m);
  static StateSpec agarwal(double eta, std::uint64_t m);

  /// Throws ParameterError when a parameter is out of range.
  void validate() const;

  /// Short human-readable label, e.g. "thermal(nbar=1)".
  std::string label() const;

  bool operator==(const StateSpec&) const = default;
};

/// Exact mean photon number of the family.
double analytic_mean(const StateSpec& spec);

}  // namespace photonstat
