#pragma once

#include <stdexcept>

namespace axonpml {

/// Invalid input or a violated invariant. The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The wavenumber hits k = m*pi/Z, where the DtN map is undefined.
class ResonanceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Factorization or solve failure. The CLI maps it to exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace axonpml
