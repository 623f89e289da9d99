#include "photonstat/state.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "photonstat/errors.hpp"

namespace photonstat {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::Fock, "fock"},
    {Family::Coherent, "coherent"},
    {Family::Thermal, "thermal"},
    {Family::SqueezedVacuum, "squeezed"},
    {Family::CatEven, "cat-even"},
    {Family::CatOdd, "cat-odd"},
    {Family::Binomial, "binomial"},
    {Family::NegBinomial, "negbinomial"},
    {Family::AgarwalNegBinomial, "agarwal"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  throw ParameterError("unknown state family '" + std::string(name) + "'");
}

StateSpec StateSpec::fock(std::uint64_t n) { return {Family::Fock, n, 0.0, 1.0}; }
StateSpec StateSpec::coherent(double alpha_sq) { return {Family::Coherent, 0, alpha_sq, 1.0}; }
StateSpec StateSpec::thermal(double nbar) { return {Family::Thermal, 0, nbar, 1.0}; }
StateSpec StateSpec::squeezed(double nbar) { return {Family::SqueezedVacuum, 0, nbar, 1.0}; }
StateSpec StateSpec::cat_even(double alpha_sq) { return {Family::CatEven, 0, alpha_sq, 1.0}; }
StateSpec StateSpec::cat_odd(double alpha_sq) { return {Family::CatOdd, 0, alpha_sq, 1.0}; }
StateSpec StateSpec::binomial(double eta, std::uint64_t m) { return {Family::Binomial, m, 0.0, eta}; }
StateSpec StateSpec::negbinomial(double eta, std::uint64_t m) {
  return {Family::NegBinomial, m, 0.0, eta};
}
StateSpec StateSpec::agarwal(double eta, std::uint64_t m) {
  return {Family::AgarwalNegBinomial, m, 0.0, eta};
}

void StateSpec::validate() const {
  switch (family) {
    case Family::Fock:
      return;
    case Family::Coherent:
    case Family::CatEven:
      require(std::isfinite(intensity) && intensity >= 0.0, "|alpha|^2 must be a finite value >= 0");
      return;
    case Family::CatOdd:
      // The sinh normalization is singular at |alpha|^2 = 0.
      require(std::isfinite(intensity) && intensity > 0.0, "odd cat requires |alpha|^2 > 0");
      return;
    case Family::Thermal:
    case Family::SqueezedVacuum:
      require(std::isfinite(intensity) && intensity >= 0.0, "mean photon number must be a finite value >= 0");
      return;
    case Family::Binomial:
      require(eta >= 0.0 && eta <= 1.0, "binomial state requires 0 <= eta <= 1");
      return;
    case Family::NegBinomial:
    case Family::AgarwalNegBinomial:
      // eta = 0 would put all mass at infinity.
      require(eta > 0.0 && eta <= 1.0, "negative binomial state requires 0 < eta <= 1");
      return;
  }
  throw ParameterError("unknown state family");
}

std::string StateSpec::label() const {
  std::ostringstream os;
  os.precision(17);
  os << family_name(family) << '(';
  switch (family) {
    case Family::Fock:
      os << "n=" << count;
      break;
    case Family::Coherent:
    case Family::CatEven:
    case Family::CatOdd:
      os << "a2=" << intensity;
      break;
    case Family::Thermal:
    case Family::SqueezedVacuum:
      os << "nbar=" << intensity;
      break;
    case Family::Binomial:
    case Family::NegBinomial:
    case Family::AgarwalNegBinomial:
      os << "eta=" << eta << ",m=" << count;
      break;
  }
  os << ')';
  return os.str();
}

double analytic_mean(const StateSpec& spec) {
  spec.validate();
  const double x = spec.intensity;
  const double m = static_cast<double>(spec.count);
  switch (spec.family) {
    case Family::Fock:
      return m;
    case Family::Coherent:
    case Family::Thermal:
    case Family::SqueezedVacuum:
      return x;
    case Family::CatEven:
      return x * std::tanh(x);
    case Family::CatOdd:
      return x / std::tanh(x);
    case Family::Binomial:
      return spec.eta * m;
    case Family::NegBinomial:
      return (m + 1.0) / spec.eta - 1.0;
    case Family::AgarwalNegBinomial:
      return (m + 1.0) / spec.eta - 1.0 - m;
  }
  return 0.0;
}

}  // namespace photonstat
