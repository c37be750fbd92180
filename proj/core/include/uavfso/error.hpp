#pragma once

#include <stdexcept>
#include <string>

namespace uavfso {

/// Input outside the domain of an operation (caller bug or invalid parameter set).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, series, special function) failed to
/// reach its tolerance. The message names the offending arguments.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavfso
