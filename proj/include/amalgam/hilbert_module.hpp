#pragma once

#include <vector>

#include "amalgam/algebra.hpp"

namespace amalgam {

/// Finite-dimensional right Hilbert B-module stored as a plain complex
/// coordinate space with a B-valued inner-product tensor. Coordinates
/// produced by this library are always orthonormal for the scalarized
/// (ambient-trace) inner product, so the scalar Gram is the identity.
struct HilbertModule {
  FiniteCStarAlgebra coeff;        // B
  int dim = 0;                     // complex dimension m
  std::vector<CMat> right_act;     // per B basis element: m x m
  CMat gram;                       // (m*n) x (m*n); block (i,j) = <e_i, e_j> in M_n

  /// B-valued inner product of coordinate vectors (ambient matrix).
  CMat inner(const CVec& x, const CVec& y) const;
  /// <e_i, e_j> block.
  CMat inner_block(int i, int j) const;
  /// Right action by an ambient element of B, as a matrix on coordinates.
  CMat right_apply_mat(const CMat& b) const;
  /// Linear combination of the right-action generators by B-coordinates.
  CMat right_from_coords(const CVec& bcoords) const;
};

/// B as a right module over itself with <x, y> = x* y, in coordinates
/// that are orthonormal under the normalized ambient trace.
struct CoefficientModule {
  HilbertModule mod;
  std::vector<CMat> left_B;  // left multiplication on module coordinates
  CMat to_coords;            // module coords <- B basis coords
  CMat to_algebra;           // B basis coords <- module coords
};
CoefficientModule coefficient_module(const FiniteCStarAlgebra& b,
                                     const Tolerance& tol = {});

/// Module with a distinguished cyclic vector and a left *-action of an
/// algebra. The splitting E = xi B (+) E_deg into the vacuum part and
/// its orthogonal complement is precomputed.
struct PointedModule {
  HilbertModule mod;
  FiniteCStarAlgebra acting;     // A
  std::vector<CMat> left_act;    // per A basis element: m x m
  CVec cyclic;                   // xi
  CMat vac_basis;                // m x dim(B): column t = coords of xi . b_t
  CMat centered_basis;           // m x d: orthonormal basis of the complement
  CMat representatives;          // dim(A) x m (GNS only; empty otherwise)

  CMat left_apply_mat(const CMat& a) const;
  /// <xi, a . xi> as an ambient element of B.
  CMat vacuum_expectation(const CMat& a) const;
};

/// The complement E_deg of the cyclic part, packaged as a module of its
/// own together with the left B-action and the embedding into E.
struct CenteredPart {
  HilbertModule mod;
  std::vector<CMat> left_B;  // left action of B basis on complement coords
  CMat embed;                // m x d (equals the pointed module's centered_basis)
};
CenteredPart centered_part(const PointedModule& pm, const Tolerance& tol = {});

/// Positive unital linear functional with faithful GNS restriction,
/// used to scalarize B-valued inner products.
struct FaithfulStateRep {
  FiniteCStarAlgebra algebra;
  CVec values;  // state(b_i) over the basis

  Complex apply(const CMat& b) const;
  static FaithfulStateRep trace_state(const FiniteCStarAlgebra& b);
  /// Positive-definiteness of the Gram (state(b_i* b_j)).
  bool is_faithful(const Tolerance& tol = {}) const;
};

/// Scalar Gram matrix of a module under a state on its coefficients.
CMat scalarize(const HilbertModule& e, const FaithfulStateRep& rep);

/// GNS construction of a validated conditional expectation with
/// faithful GNS representation: the quotient of A by the null space of
/// <a, a'> = phi(a* a'), with cyclic vector the class of 1 and the left
/// action by multiplication. Throws NotFaithful when gns_faithful
/// fails.
PointedModule gns_module(const ConditionalExpectation& ce,
                         const Tolerance& tol = {});

/// Interior tensor product over E1's coefficient algebra. `connect`
/// gives the left action of E1's coefficients on E2 (one matrix per
/// basis element of B1); it may come from a *-homomorphism or, for
/// dilations, from a completely positive map. The semi-inner product is
/// quotiented by its null space via the ambient-trace scalarization of
/// E2's coefficients.
struct InteriorTensor {
  HilbertModule mod;   // over E2's coefficient algebra
  CMat q;              // quotient map: (m1*m2) -> dim
  CMat r;              // representatives: dim -> (m1*m2)
  int m1 = 0, m2 = 0;  // factor dimensions; kron index = i*m2 + j
};
InteriorTensor interior_tensor(const HilbertModule& e1, const HilbertModule& e2,
                               const std::vector<CMat>& connect,
                               const Tolerance& tol = {});

/// Transports an operator acting on the first tensor factor through the
/// quotient coordinates.
CMat first_factor_operator(const InteriorTensor& t, const CMat& op);

/// Lemma-style tensor product of adjointable operators: checks the
/// intertwining condition w pi(a) = pi_tilde(a) w on a basis of E1's
/// coefficient algebra, then forms v (x) w between the interior tensor
/// products. Throws IntertwineViolation when the condition fails.
CMat tensor_operator(const InteriorTensor& dom, const InteriorTensor& cod,
                     const CMat& v, const CMat& w,
                     const std::vector<CMat>& pi,
                     const std::vector<CMat>& pi_tilde,
                     const Tolerance& tol = {});

/// Residual of B-linearity: max over B basis of |T R(b) - R(b) T|.
double module_map_defect(const CMat& op, const HilbertModule& dom,
                         const HilbertModule& cod);

/// Residual of the adjoint identity <T x, y> = <x, T* y> where T* is
/// the scalar adjoint (conjugate transpose in orthonormal coords).
double adjoint_defect(const CMat& op, const HilbertModule& dom,
                      const HilbertModule& cod);

}  // namespace amalgam
