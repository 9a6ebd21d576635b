#pragma once

#include <stdexcept>
#include <string>

namespace vlcnoma {

/// Invalid scenario or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Linear-algebra failure (singular or ill-conditioned system).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The strong-UE channel matrix is too close to singular for ZF precoding.
class DegenerateChannelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A channel gain came out non-finite.
class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precoded sample exceeded the LED peak-amplitude bound.
class AmplitudeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vlcnoma
