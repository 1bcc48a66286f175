#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amalgam/numerics.hpp"

namespace amalgam {

/// A concrete unital *-subalgebra of M_n(C), given by a linearly
/// independent basis of ambient matrices. The span is validated (or
/// generated) to be closed under products and adjoints and to contain
/// the ambient identity.
class FiniteCStarAlgebra {
 public:
  /// Empty algebra placeholder; every factory returns a validated one.
  FiniteCStarAlgebra() = default;

  /// Validates closure of the given span and keeps the basis as is.
  static FiniteCStarAlgebra from_basis(std::vector<CMat> basis,
                                       const Tolerance& tol = {});

  /// Smallest unital *-closed span containing the generators, obtained
  /// by iterating products until the span stabilizes. The dimension is
  /// capped at n^2.
  static FiniteCStarAlgebra generate(int ambient_dim,
                                     const std::vector<CMat>& generators,
                                     const Tolerance& tol = {});

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<CMat>& basis() const { return basis_; }
  const CMat& basis_element(int i) const { return basis_[i]; }
  CMat unit() const { return CMat::Identity(ambient_, ambient_); }
  const CVec& unit_coords() const { return unit_coords_; }

  /// Coordinates of an ambient matrix in the basis; throws NotInAlgebra
  /// when the residual exceeds tolerance.
  CVec coords(const CMat& x) const;
  bool contains(const CMat& x) const;
  CMat element(const CVec& coords) const;

  /// Matrix of left multiplication by `x` acting on basis coordinates.
  CMat left_mult_matrix(const CMat& x) const;
  /// Matrix of right multiplication by `x` on basis coordinates.
  CMat right_mult_matrix(const CMat& x) const;
  /// Coordinate matrix of the adjoint map a -> a*.
  CMat adjoint_matrix() const;

  /// Approximate equality of the spanned subalgebras.
  bool same_span(const FiniteCStarAlgebra& other) const;
  /// True iff every basis element of `sub` lies in this span.
  bool contains_algebra(const FiniteCStarAlgebra& sub) const;

  const Tolerance& tolerance() const { return tol_; }

 private:
  FiniteCStarAlgebra() = default;
  void finalize(const Tolerance& tol);

  int ambient_ = 0;
  std::vector<CMat> basis_;
  CMat basis_mat_;  // n^2 x k, column j = vec(basis_[j])
  Eigen::CompleteOrthogonalDecomposition<CMat> coord_solver_;
  CVec unit_coords_;
  Tolerance tol_;
};

/// Scalar algebra C*1 inside M_n.
FiniteCStarAlgebra scalar_algebra(int ambient_dim, const Tolerance& tol = {});
/// Diagonal matrices inside M_n.
FiniteCStarAlgebra diagonal_algebra(int ambient_dim, const Tolerance& tol = {});
/// Full matrix algebra M_n.
FiniteCStarAlgebra full_matrix_algebra(int ambient_dim,
                                       const Tolerance& tol = {});

/// Unital inclusion of concrete subalgebras of the same ambient matrix
/// algebra. The injection is the identity on ambient matrices; the
/// constructor verifies that sub's basis lies in super's span.
struct UnitalInclusion {
  FiniteCStarAlgebra sub;
  FiniteCStarAlgebra super;

  static UnitalInclusion make(FiniteCStarAlgebra sub, FiniteCStarAlgebra super);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  double max_residual() const;
};

/// Validated conditional expectation phi: A -> B onto a unital
/// subalgebra B of A (same ambient matrices). Stored as the list of
/// values phi(a_i) over A's basis.
class ConditionalExpectation {
 public:
  /// `coord_map` is dim(B) x dim(A): column j holds the B-coordinates
  /// of phi(a_j).
  ConditionalExpectation(FiniteCStarAlgebra source, FiniteCStarAlgebra target,
                         const CMat& coord_map);

  const FiniteCStarAlgebra& source() const { return source_; }
  const FiniteCStarAlgebra& target() const { return target_; }
  const CMat& coord_map() const { return coord_map_; }

  /// phi applied to an ambient matrix of A; result is an ambient matrix
  /// lying in B's span.
  CMat apply(const CMat& x) const;
  /// phi as a matrix on A-coordinates (dim A x dim A), valued in A.
  CMat coordinate_endomorphism() const;
  /// Basis of ker(phi) expressed in A-coordinates (columns orthonormal).
  CMat kernel_coords(const Tolerance& tol = {}) const;

 private:
  FiniteCStarAlgebra source_;
  FiniteCStarAlgebra target_;
  CMat coord_map_;
  std::vector<CMat> values_;
};

/// Normalized-trace state onto the scalars, as a conditional
/// expectation A -> C*1.
ConditionalExpectation trace_expectation(const FiniteCStarAlgebra& algebra,
                                         const Tolerance& tol = {});

/// Compression onto the diagonal, as a conditional expectation from a
/// matrix algebra containing the diagonal.
ConditionalExpectation diagonal_expectation(const FiniteCStarAlgebra& algebra,
                                            const Tolerance& tol = {});

/// Runs the four defining checks: unitality, projection onto B,
/// B-bimodule property on basis triples, and complete positivity of
/// the scalarized Gram block matrix [phi(a_i* a_j)].
ValidationReport validate_cexp(const ConditionalExpectation& ce,
                               const Tolerance& tol = {});

/// True iff the left action of A on L^2(A, phi) has trivial kernel.
/// Requires validate_cexp to pass; throws InvalidCE otherwise.
bool gns_faithful(const ConditionalExpectation& ce, const Tolerance& tol = {});

/// Extends a basis whose unit p differs from the ambient identity by
/// adjoining C(1 - p); used by config preprocessing for non-unital
/// inclusions.
std::vector<CMat> adjoin_complement_unit(const std::vector<CMat>& basis,
                                         const Tolerance& tol = {});

}  // namespace amalgam
