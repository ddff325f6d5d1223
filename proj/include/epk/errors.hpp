#pragma once

#include <stdexcept>
#include <string>

namespace epk {

// Precondition violations on user input surface as std::invalid_argument.
// Failures that describe the mathematics of a valid input derive from
// DomainError; the CLI maps those to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fundamental matrix spectrum is not real and non-degenerate.
class NonRealFundamentalSpectrum : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Transition matrix would be singular for the requested parameters.
class SingularTransition : public DomainError {
 public:
  using DomainError::DomainError;
};

class EigensolverFailure : public DomainError {
 public:
  EigensolverFailure(const std::string& what, std::string matrix_hash)
      : DomainError(what + " (matrix " + matrix_hash + ")"), hash_(std::move(matrix_hash)) {}
  const std::string& matrix_hash() const { return hash_; }

 private:
  std::string hash_;
};

}  // namespace epk
