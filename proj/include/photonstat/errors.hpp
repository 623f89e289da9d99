#pragma once

#include <stdexcept>
#include <string>

namespace photonstat {

/// A state, channel or operation parameter lies outside its allowed range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form expression was evaluated at a pole or branch point.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The heralding event has zero probability, so the conditional state does
/// not exist (e.g. subtracting a photon from the vacuum).
class ImpossibleEventError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace photonstat
