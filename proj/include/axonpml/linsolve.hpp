#pragma once

#include <Eigen/Dense>

#include "axonpml/assembly.hpp"

namespace axonpml {

struct SolveReport {
  double relative_residual = 0.0;  // ||Ax - b|| / ||b||, 0 when b = 0
  long factor_nnz = 0;             // nonzeros in L + U
  double elapsed = 0.0;            // seconds, analysis through residual check
};

struct SolveResult {
  Eigen::VectorXcd solution;
  SolveReport report;
};

/// Maximum accepted relative residual.
inline constexpr double kResidualTolerance = 1e-8;

/// Sparse LU (UMFPACK, threshold partial pivoting 0.1).
/// Throws SolverError on non-finite input, a singular factorization or a
/// residual above kResidualTolerance.
SolveResult solve(const ComplexSystem& system);
SolveResult solve(const SparseMatrix& matrix, const Eigen::VectorXcd& rhs);

}  // namespace axonpml
