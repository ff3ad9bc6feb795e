#include "axonpml/linsolve.hpp"

#include <umfpack.h>

#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "axonpml/errors.hpp"

namespace axonpml {
namespace {

// Owns UMFPACK symbolic/numeric handles for one factorization.
class UmfpackLU {
 public:
  UmfpackLU(const SparseMatrix& a) : a_(a) {
    umfpack_zl_defaults(control_);
    control_[UMFPACK_PIVOT_TOLERANCE] = 0.1;
    control_[UMFPACK_SYM_PIVOT_TOLERANCE] = 0.1;
    n_ = a_.rows();
    ap_.assign(a_.outerIndexPtr(), a_.outerIndexPtr() + n_ + 1);
    ai_.assign(a_.innerIndexPtr(), a_.innerIndexPtr() + a_.nonZeros());
    ax_ = reinterpret_cast<const double*>(a_.valuePtr());

    SuiteSparse_long status = umfpack_zl_symbolic(n_, n_, ap_.data(), ai_.data(), ax_, nullptr, &symbolic_,
                                     control_, info_);
    check(status, "symbolic analysis");
    status = umfpack_zl_numeric(ap_.data(), ai_.data(), ax_, nullptr, symbolic_, &numeric_,
                                control_, info_);
    check(status, "numeric factorization");
    factor_nnz_ = static_cast<long>(info_[UMFPACK_LNZ] + info_[UMFPACK_UNZ]);
  }
  ~UmfpackLU() {
    if (numeric_) umfpack_zl_free_numeric(&numeric_);
    if (symbolic_) umfpack_zl_free_symbolic(&symbolic_);
  }
  UmfpackLU(const UmfpackLU&) = delete;
  UmfpackLU& operator=(const UmfpackLU&) = delete;

  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) {
    Eigen::VectorXcd x(n_);
    const SuiteSparse_long status = umfpack_zl_solve(UMFPACK_A, ap_.data(), ai_.data(), ax_, nullptr,
                                        reinterpret_cast<double*>(x.data()), nullptr,
                                        reinterpret_cast<const double*>(b.data()), nullptr,
                                        numeric_, control_, info_);
    check(status, "triangular solve");
    return x;
  }

  long factor_nnz() const { return factor_nnz_; }

 private:
  void check(SuiteSparse_long status, const char* stage) const {
    if (status == UMFPACK_OK) return;
    std::ostringstream msg;
    if (status == UMFPACK_WARNING_singular_matrix) {
      msg << "singular matrix detected during " << stage;
    } else {
      msg << "UMFPACK " << stage << " failed with status " << status;
    }
    throw SolverError(msg.str());
  }

  const SparseMatrix& a_;
  SuiteSparse_long n_ = 0;
  std::vector<SuiteSparse_long> ap_, ai_;
  const double* ax_ = nullptr;
  void* symbolic_ = nullptr;
  void* numeric_ = nullptr;
  double control_[UMFPACK_CONTROL];
  double info_[UMFPACK_INFO];
  long factor_nnz_ = 0;
};

bool all_finite(const cplx* v, Eigen::Index n) {
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  }
  return true;
}

}  // namespace

SolveResult solve(const SparseMatrix& matrix, const Eigen::VectorXcd& rhs) {
  const auto start = std::chrono::steady_clock::now();
  if (matrix.rows() != matrix.cols()) throw SolverError("matrix is not square");
  if (rhs.size() != matrix.rows()) throw SolverError("rhs size does not match matrix");
  if (matrix.rows() == 0) throw SolverError("empty system");

  SparseMatrix a = matrix;
  a.makeCompressed();
  if (!all_finite(a.valuePtr(), a.nonZeros())) throw SolverError("non-finite matrix entry");
  if (!all_finite(rhs.data(), rhs.size())) throw SolverError("non-finite right-hand side entry");

  SolveResult result;
  UmfpackLU lu(a);
  result.solution = lu.solve(rhs);
  result.report.factor_nnz = lu.factor_nnz();
  if (!all_finite(result.solution.data(), result.solution.size())) {
    throw SolverError("solution is not finite (numerically singular matrix)");
  }

  const double bnorm = rhs.norm();
  const double rnorm = (a * result.solution - rhs).norm();
  result.report.relative_residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  result.report.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!(result.report.relative_residual <= kResidualTolerance)) {
    std::ostringstream msg;
    msg << "relative residual " << result.report.relative_residual << " exceeds "
        << kResidualTolerance;
    throw SolverError(msg.str());
  }
  return result;
}

SolveResult solve(const ComplexSystem& system) { return solve(system.matrix, system.rhs); }

}  // namespace axonpml
