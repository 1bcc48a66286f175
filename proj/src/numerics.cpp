#include "amalgam/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace amalgam {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::InvalidCE: return "InvalidCE";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotFaithfulRestriction: return "NotFaithfulRestriction";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::IntertwineViolation: return "IntertwineViolation";
    case ErrorCode::MixedCoefficients: return "MixedCoefficients";
    case ErrorCode::IndexUnknown: return "IndexUnknown";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::NotInFactor: return "NotInFactor";
    case ErrorCode::SeedNotStar: return "SeedNotStar";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::BlockMismatch: return "BlockMismatch";
    case ErrorCode::NotUCP: return "NotUCP";
    case ErrorCode::NotBimodule: return "NotBimodule";
    case ErrorCode::ExpectationMismatch: return "ExpectationMismatch";
    case ErrorCode::NotInTarget: return "NotInTarget";
    case ErrorCode::WordTooLong: return "WordTooLong";
    case ErrorCode::NotScalarCoefficients: return "NotScalarCoefficients";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

bool is_finite(const CMat& m) {
  return m.array().isFinite().all();
}

double operator_norm(const CMat& m) {
  if (!is_finite(m)) fail(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues()(0);
}

bool psd_floor(const CMat& m, const Tolerance& tol) {
  if (!is_finite(m)) fail(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
  if (m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch, "psd_floor expects a square matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = operator_norm(m - m.adjoint());
  if (defect > tol.abs_eps * scale)
    fail(ErrorCode::NotHermitian,
         "Hermitian defect " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(m),
                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol.abs_eps;
}

NullSplit null_space_split(const CMat& gram, const Tolerance& tol) {
  if (!is_finite(gram)) fail(ErrorCode::NonFinite, "gram has NaN/Inf entries");
  if (gram.rows() != gram.cols())
    fail(ErrorCode::DimensionMismatch, "gram matrix must be square");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  const double defect = operator_norm(gram - gram.adjoint());
  if (defect > tol.abs_eps * scale)
    fail(ErrorCode::NotHermitian, "gram Hermitian defect " +
                                      std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(gram));
  const RVec& evals = es.eigenvalues();
  if (evals.size() > 0 && evals.minCoeff() < -10.0 * tol.abs_eps * scale)
    fail(ErrorCode::NotPSD,
         "negative eigenvalue " + std::to_string(evals.minCoeff()));
  Eigen::Index n = evals.size();
  Eigen::Index null_count = 0;
  while (null_count < n && evals(null_count) < tol.abs_eps) ++null_count;
  NullSplit out;
  out.null_basis = es.eigenvectors().leftCols(null_count);
  out.range_basis = es.eigenvectors().rightCols(n - null_count);
  out.range_eigenvalues = evals.tail(n - null_count);
  return out;
}

std::vector<CVec> null_space_basis(const CMat& gram, const Tolerance& tol) {
  NullSplit split = null_space_split(gram, tol);
  std::vector<CVec> out;
  out.reserve(static_cast<size_t>(split.null_basis.cols()));
  for (Eigen::Index j = 0; j < split.null_basis.cols(); ++j)
    out.push_back(split.null_basis.col(j));
  return out;
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols)
    fail(ErrorCode::DimensionMismatch, "unvec size mismatch");
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

LeastSquares solve_least_squares(const CMat& a, const CVec& b) {
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(a);
  LeastSquares out;
  out.solution = cod.solve(b);
  out.residual = (a * out.solution - b).norm();
  return out;
}

CMat orthonormal_columns(const CMat& a, const Tolerance& tol) {
  if (a.cols() == 0 || a.rows() == 0) return CMat(a.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  const RVec& sv = svd.singularValues();
  const double cutoff = std::max(tol.abs_eps, tol.rel_eps * sv(0));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

double deviation_from_identity(const CMat& m) {
  return operator_norm(m - CMat::Identity(m.rows(), m.cols()));
}

}  // namespace amalgam
