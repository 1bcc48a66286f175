#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Failure conditions surfaced by the library. Every throw site carries one
/// code so callers and tests can match on the condition instead of message
/// text.
enum class ErrorCode {
  NonFinite,
  NotHermitian,
  NotPSD,
  DimensionMismatch,
  NotInAlgebra,
  ClosureOverflow,
  InvalidCE,
  NotFaithful,
  NotFaithfulRestriction,
  ActionMismatch,
  IntertwineViolation,
  MixedCoefficients,
  IndexUnknown,
  TruncationOverflow,
  LevelOutOfRange,
  NotInFactor,
  SeedNotStar,
  RangeViolation,
  BlockMismatch,
  NotUCP,
  NotBimodule,
  ExpectationMismatch,
  NotInTarget,
  WordTooLong,
  NotScalarCoefficients,
  ParseError,
  SchemaError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Global tolerance policy. A single instance is threaded through all
/// modules; the defaults suit well-conditioned fixtures of dimension
/// up to a few hundred.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;
};

bool is_finite(const CMat& m);

/// Largest singular value. Throws NonFinite on NaN/Inf entries.
double operator_norm(const CMat& m);

/// Minimum eigenvalue test for Hermitian matrices: true iff
/// lambda_min >= -abs_eps. Symmetrizes (m + m*)/2 before the
/// eigendecomposition; throws NotHermitian when the defect exceeds
/// abs_eps against the matrix scale.
bool psd_floor(const CMat& m, const Tolerance& tol = {});

/// Eigenvalue split of a PSD Gram matrix. `null_basis` spans the
/// eigenvectors with eigenvalue < abs_eps, `range_basis` the rest; both
/// column sets are orthonormal. Throws NotPSD when a significantly
/// negative eigenvalue exists.
struct NullSplit {
  CMat null_basis;
  CMat range_basis;
  RVec range_eigenvalues;
};
NullSplit null_space_split(const CMat& gram, const Tolerance& tol = {});

/// Convenience wrapper returning only the null-space columns.
std::vector<CVec> null_space_basis(const CMat& gram, const Tolerance& tol = {});

/// (m + m*)/2 without any Hermiticity check.
CMat hermitize(const CMat& m);

CMat kron(const CMat& a, const CMat& b);
CVec kron_vec(const CVec& a, const CVec& b);

/// Column-major flattening of a matrix and its inverse.
CVec vec(const CMat& m);
CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols);

/// Minimum-norm least-squares solve of A x = b; also reports the
/// residual norm |A x - b|.
struct LeastSquares {
  CVec solution;
  double residual = 0.0;
};
LeastSquares solve_least_squares(const CMat& a, const CVec& b);

/// Orthonormal basis of the column span of `a`, determined by singular
/// values above max(abs_eps, rel_eps * sigma_max). Deterministic for a
/// fixed input.
CMat orthonormal_columns(const CMat& a, const Tolerance& tol = {});

/// Identity test helper: |m - id| in operator norm.
double deviation_from_identity(const CMat& m);

}  // namespace amalgam
