#pragma once

#include <stdexcept>
#include <string>

namespace bioperf {

// A rate or estimator was asked to divide by a non-positive quantity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input: asymmetric matrices, bad CSV cells, unknown labels, ...
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Socket, bind and protocol failures in the traffic harness.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bioperf
