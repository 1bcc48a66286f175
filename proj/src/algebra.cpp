#include "amalgam/algebra.hpp"

#include <algorithm>

namespace amalgam {

namespace {

CMat stack_vecs(const std::vector<CMat>& mats) {
  if (mats.empty()) return CMat(0, 0);
  CMat out(mats[0].size(), static_cast<Eigen::Index>(mats.size()));
  for (size_t j = 0; j < mats.size(); ++j) out.col(j) = vec(mats[j]);
  return out;
}

}  // namespace

FiniteCStarAlgebra FiniteCStarAlgebra::from_basis(std::vector<CMat> basis,
                                                  const Tolerance& tol) {
  if (basis.empty())
    fail(ErrorCode::DimensionMismatch, "algebra basis must be nonempty");
  const Eigen::Index n = basis[0].rows();
  for (const CMat& b : basis) {
    if (b.rows() != n || b.cols() != n)
      fail(ErrorCode::DimensionMismatch, "basis matrices must be square of equal size");
    if (!is_finite(b)) fail(ErrorCode::NonFinite, "basis entry not finite");
  }
  FiniteCStarAlgebra alg;
  alg.ambient_ = static_cast<int>(n);
  alg.basis_ = std::move(basis);
  alg.finalize(tol);

  // Closure checks: identity, adjoints, pairwise products.
  const double scale = 1.0;
  auto in_span = [&](const CMat& x) {
    LeastSquares ls = solve_least_squares(alg.basis_mat_, vec(x));
    return ls.residual <= tol.abs_eps * std::max(scale, x.norm());
  };
  if (!in_span(alg.unit()))
    fail(ErrorCode::NotInAlgebra, "span does not contain the identity");
  for (const CMat& b : alg.basis_)
    if (!in_span(b.adjoint()))
      fail(ErrorCode::NotInAlgebra, "span not closed under adjoint");
  for (const CMat& a : alg.basis_)
    for (const CMat& b : alg.basis_)
      if (!in_span(a * b))
        fail(ErrorCode::NotInAlgebra, "span not closed under products");
  return alg;
}

FiniteCStarAlgebra FiniteCStarAlgebra::generate(
    int ambient_dim, const std::vector<CMat>& generators,
    const Tolerance& tol) {
  const Eigen::Index n = ambient_dim;
  std::vector<CMat> pool;
  pool.push_back(CMat::Identity(n, n));
  for (const CMat& g : generators) {
    if (g.rows() != n || g.cols() != n)
      fail(ErrorCode::DimensionMismatch, "generator has wrong ambient size");
    pool.push_back(g);
    pool.push_back(g.adjoint());
  }

  CMat span = orthonormal_columns(stack_vecs(pool), tol);
  const Eigen::Index cap = n * n;
  for (int round = 0; round < 2 * cap; ++round) {
    Eigen::Index k = span.cols();
    std::vector<CMat> next;
    next.reserve(static_cast<size_t>(k * k + k));
    for (Eigen::Index j = 0; j < k; ++j) next.push_back(unvec(span.col(j), n, n));
    std::vector<CMat> products;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        products.push_back(next[i] * next[j]);
    CMat wide(n * n, k + static_cast<Eigen::Index>(products.size()));
    wide.leftCols(k) = span;
    for (size_t p = 0; p < products.size(); ++p)
      wide.col(k + static_cast<Eigen::Index>(p)) = vec(products[p]);
    CMat grown = orthonormal_columns(wide, tol);
    if (grown.cols() > cap)
      fail(ErrorCode::ClosureOverflow, "closure exceeded ambient dimension cap");
    if (grown.cols() == span.cols()) {
      std::vector<CMat> basis;
      basis.reserve(static_cast<size_t>(grown.cols()));
      for (Eigen::Index j = 0; j < grown.cols(); ++j)
        basis.push_back(unvec(grown.col(j), n, n));
      return from_basis(std::move(basis), tol);
    }
    span = grown;
  }
  fail(ErrorCode::ClosureOverflow, "closure iteration did not stabilize");
}

void FiniteCStarAlgebra::finalize(const Tolerance& tol) {
  tol_ = tol;
  basis_mat_ = stack_vecs(basis_);
  Eigen::JacobiSVD<CMat> svd(basis_mat_);
  const RVec& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= tol.abs_eps * std::max(1.0, sv(0)))
    fail(ErrorCode::DimensionMismatch, "algebra basis is linearly dependent");
  coord_solver_.compute(basis_mat_);
  unit_coords_ = coords(unit());
}

CVec FiniteCStarAlgebra::coords(const CMat& x) const {
  if (x.rows() != ambient_ || x.cols() != ambient_)
    fail(ErrorCode::DimensionMismatch, "coords: ambient size mismatch");
  CVec c = coord_solver_.solve(vec(x));
  const double residual = (basis_mat_ * c - vec(x)).norm();
  if (residual > tol_.abs_eps * std::max(1.0, x.norm()) * 100.0)
    fail(ErrorCode::NotInAlgebra,
         "element outside span, residual " + std::to_string(residual));
  return c;
}

bool FiniteCStarAlgebra::contains(const CMat& x) const {
  if (x.rows() != ambient_ || x.cols() != ambient_) return false;
  CVec c = coord_solver_.solve(vec(x));
  const double residual = (basis_mat_ * c - vec(x)).norm();
  return residual <= tol_.abs_eps * std::max(1.0, x.norm()) * 100.0;
}

CMat FiniteCStarAlgebra::element(const CVec& c) const {
  if (c.size() != dim())
    fail(ErrorCode::DimensionMismatch, "element: coordinate size mismatch");
  CMat out = CMat::Zero(ambient_, ambient_);
  for (int j = 0; j < dim(); ++j) out += c(j) * basis_[j];
  return out;
}

CMat FiniteCStarAlgebra::left_mult_matrix(const CMat& x) const {
  CMat out(dim(), dim());
  for (int j = 0; j < dim(); ++j) out.col(j) = coords(x * basis_[j]);
  return out;
}

CMat FiniteCStarAlgebra::right_mult_matrix(const CMat& x) const {
  CMat out(dim(), dim());
  for (int j = 0; j < dim(); ++j) out.col(j) = coords(basis_[j] * x);
  return out;
}

CMat FiniteCStarAlgebra::adjoint_matrix() const {
  CMat out(dim(), dim());
  for (int j = 0; j < dim(); ++j) out.col(j) = coords(basis_[j].adjoint());
  return out;
}

bool FiniteCStarAlgebra::same_span(const FiniteCStarAlgebra& other) const {
  return dim() == other.dim() && contains_algebra(other);
}

bool FiniteCStarAlgebra::contains_algebra(const FiniteCStarAlgebra& sub) const {
  if (sub.ambient_dim() != ambient_dim()) return false;
  for (const CMat& b : sub.basis())
    if (!contains(b)) return false;
  return true;
}

FiniteCStarAlgebra scalar_algebra(int n, const Tolerance& tol) {
  return FiniteCStarAlgebra::from_basis({CMat::Identity(n, n)}, tol);
}

FiniteCStarAlgebra diagonal_algebra(int n, const Tolerance& tol) {
  std::vector<CMat> basis;
  for (int i = 0; i < n; ++i) {
    CMat e = CMat::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  return FiniteCStarAlgebra::from_basis(std::move(basis), tol);
}

FiniteCStarAlgebra full_matrix_algebra(int n, const Tolerance& tol) {
  std::vector<CMat> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat e = CMat::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  return FiniteCStarAlgebra::from_basis(std::move(basis), tol);
}

UnitalInclusion UnitalInclusion::make(FiniteCStarAlgebra sub,
                                      FiniteCStarAlgebra super) {
  if (sub.ambient_dim() != super.ambient_dim())
    fail(ErrorCode::DimensionMismatch,
         "inclusion requires a common ambient algebra");
  if (!super.contains_algebra(sub))
    fail(ErrorCode::RangeViolation, "subalgebra basis not inside superalgebra");
  return UnitalInclusion{std::move(sub), std::move(super)};
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const CheckResult& c : checks) m = std::max(m, c.residual);
  return m;
}

ConditionalExpectation::ConditionalExpectation(FiniteCStarAlgebra source,
                                               FiniteCStarAlgebra target,
                                               const CMat& coord_map)
    : source_(std::move(source)), target_(std::move(target)),
      coord_map_(coord_map) {
  if (coord_map_.rows() != target_.dim() || coord_map_.cols() != source_.dim())
    fail(ErrorCode::DimensionMismatch,
         "expectation coordinate map must be dim(B) x dim(A)");
  UnitalInclusion::make(target_, source_);
  values_.reserve(static_cast<size_t>(source_.dim()));
  for (int j = 0; j < source_.dim(); ++j)
    values_.push_back(target_.element(coord_map_.col(j)));
}

CMat ConditionalExpectation::apply(const CMat& x) const {
  CVec c = source_.coords(x);
  CMat out = CMat::Zero(source_.ambient_dim(), source_.ambient_dim());
  for (int j = 0; j < source_.dim(); ++j) out += c(j) * values_[j];
  return out;
}

CMat ConditionalExpectation::coordinate_endomorphism() const {
  CMat out(source_.dim(), source_.dim());
  for (int j = 0; j < source_.dim(); ++j) out.col(j) = source_.coords(values_[j]);
  return out;
}

CMat ConditionalExpectation::kernel_coords(const Tolerance& tol) const {
  CMat m = coordinate_endomorphism();
  // ker(phi) = null space of the coordinate endomorphism.
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double cutoff =
      std::max(tol.abs_eps, tol.rel_eps * (sv.size() ? sv(0) : 0.0));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

ConditionalExpectation trace_expectation(const FiniteCStarAlgebra& algebra,
                                         const Tolerance& tol) {
  FiniteCStarAlgebra scalars = scalar_algebra(algebra.ambient_dim(), tol);
  CMat map(1, algebra.dim());
  for (int j = 0; j < algebra.dim(); ++j)
    map(0, j) = algebra.basis_element(j).trace() /
                static_cast<double>(algebra.ambient_dim());
  return ConditionalExpectation(algebra, std::move(scalars), map);
}

ConditionalExpectation diagonal_expectation(const FiniteCStarAlgebra& algebra,
                                            const Tolerance& tol) {
  FiniteCStarAlgebra diag = diagonal_algebra(algebra.ambient_dim(), tol);
  CMat map(diag.dim(), algebra.dim());
  for (int j = 0; j < algebra.dim(); ++j) {
    CMat d = algebra.basis_element(j).diagonal().asDiagonal();
    map.col(j) = diag.coords(d);
  }
  return ConditionalExpectation(algebra, std::move(diag), map);
}

ValidationReport validate_cexp(const ConditionalExpectation& ce,
                               const Tolerance& tol) {
  ValidationReport report;
  const FiniteCStarAlgebra& a = ce.source();
  const FiniteCStarAlgebra& b = ce.target();

  {
    const double r = operator_norm(ce.apply(a.unit()) - a.unit());
    report.checks.push_back({"unital", r <= tol.abs_eps, r});
  }
  {
    double r = 0.0;
    for (const CMat& bb : b.basis())
      r = std::max(r, operator_norm(ce.apply(bb) - bb));
    report.checks.push_back({"projection", r <= tol.abs_eps, r});
  }
  {
    double r = 0.0;
    for (const CMat& b1 : b.basis())
      for (const CMat& x : a.basis())
        for (const CMat& b2 : b.basis())
          r = std::max(r, operator_norm(ce.apply(b1 * x * b2) -
                                        b1 * ce.apply(x) * b2));
    report.checks.push_back({"bimodule", r <= 10.0 * tol.abs_eps, r});
  }
  {
    // Scalarized Gram block matrix [phi(a_i* a_j)] in M_k(M_n).
    const int k = a.dim();
    const int n = a.ambient_dim();
    CMat gram(k * n, k * n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        gram.block(i * n, j * n, n, n) =
            ce.apply(a.basis_element(i).adjoint() * a.basis_element(j));
    bool pass = false;
    double floor_violation = 0.0;
    try {
      Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(gram),
                                             Eigen::EigenvaluesOnly);
      const double min_eig = es.eigenvalues().minCoeff();
      pass = min_eig >= -tol.abs_eps * std::max(1.0, gram.cwiseAbs().maxCoeff());
      floor_violation = std::max(0.0, -min_eig);
    } catch (const Error&) {
      pass = false;
    }
    report.checks.push_back({"completely_positive", pass, floor_violation});
  }
  return report;
}

bool gns_faithful(const ConditionalExpectation& ce, const Tolerance& tol) {
  ValidationReport vr = validate_cexp(ce, tol);
  if (!vr.all_pass())
    fail(ErrorCode::InvalidCE, "conditional expectation failed validation");
  const FiniteCStarAlgebra& a = ce.source();
  const int k = a.dim();

  // Scalarized GNS Gram over A's basis, using the ambient trace on B.
  CMat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram(i, j) = ce.apply(a.basis_element(i).adjoint() * a.basis_element(j))
                       .trace() /
                   static_cast<double>(a.ambient_dim());
  NullSplit split = null_space_split(gram, tol);
  const CMat& range = split.range_basis;  // quotient representatives
  const Eigen::Index q = range.cols();

  // Left action on the quotient; faithful iff a -> pi(a) has trivial
  // kernel, i.e. the stacked column matrix has full column rank.
  CMat rep(q * q, k);
  for (int j = 0; j < k; ++j) {
    CMat left = a.left_mult_matrix(a.basis_element(j));
    CMat compressed = range.adjoint() * left * range;
    rep.col(j) = vec(compressed);
  }
  Eigen::JacobiSVD<CMat> svd(rep);
  const RVec& sv = svd.singularValues();
  if (sv.size() < k) return false;
  return sv(k - 1) > tol.abs_eps * std::max(1.0, sv(0));
}

std::vector<CMat> adjoin_complement_unit(const std::vector<CMat>& basis,
                                         const Tolerance& tol) {
  if (basis.empty()) fail(ErrorCode::DimensionMismatch, "empty basis");
  const Eigen::Index n = basis[0].rows();
  // The unit p of the span: solve p*b = b for all basis b via the span
  // projection of the identity; for a *-closed span with unit, the
  // orthogonal projection of I onto the span is the unit.
  CMat span = CMat(n * n, static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) span.col(j) = vec(basis[j]);
  CMat onb = orthonormal_columns(span, tol);
  CVec id = vec(CMat::Identity(n, n));
  CVec proj = onb * (onb.adjoint() * id);
  CMat p = unvec(proj, n, n);
  CMat complement = CMat::Identity(n, n) - p;
  if (operator_norm(complement) <= tol.abs_eps) return basis;
  std::vector<CMat> out = basis;
  out.push_back(complement);
  return out;
}

}  // namespace amalgam
