#include "amalgam/hilbert_module.hpp"

namespace amalgam {

namespace {

// Quotient coordinates from a scalar Gram: columns of `rep` are
// representatives of an orthonormal basis of the quotient, `co` maps a
// raw coordinate vector to its quotient coordinates.
struct QuotientMaps {
  CMat rep;  // raw <- quotient
  CMat co;   // quotient <- raw
};

QuotientMaps quotient_from_gram(const CMat& gram, const Tolerance& tol) {
  NullSplit split = null_space_split(gram, tol);
  const Eigen::Index m = split.range_basis.cols();
  CMat scale(m, m);
  scale.setZero();
  for (Eigen::Index i = 0; i < m; ++i)
    scale(i, i) = 1.0 / std::sqrt(split.range_eigenvalues(i));
  QuotientMaps maps;
  maps.rep = split.range_basis * scale;
  maps.co = maps.rep.adjoint() * gram;
  return maps;
}

}  // namespace

CMat HilbertModule::inner(const CVec& x, const CVec& y) const {
  const int n = coeff.ambient_dim();
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == Complex(0.0)) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == Complex(0.0)) continue;
      out += std::conj(x(i)) * y(j) * gram.block(i * n, j * n, n, n);
    }
  }
  return out;
}

CMat HilbertModule::inner_block(int i, int j) const {
  const int n = coeff.ambient_dim();
  return gram.block(i * n, j * n, n, n);
}

CMat HilbertModule::right_apply_mat(const CMat& b) const {
  return right_from_coords(coeff.coords(b));
}

CMat HilbertModule::right_from_coords(const CVec& bcoords) const {
  CMat out = CMat::Zero(dim, dim);
  for (int t = 0; t < coeff.dim(); ++t) out += bcoords(t) * right_act[t];
  return out;
}

CoefficientModule coefficient_module(const FiniteCStarAlgebra& b,
                                     const Tolerance& tol) {
  const int k = b.dim();
  const int n = b.ambient_dim();
  CMat gram_raw(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram_raw(i, j) = (b.basis_element(i).adjoint() * b.basis_element(j))
                           .trace() /
                       static_cast<double>(n);
  QuotientMaps maps = quotient_from_gram(gram_raw, tol);
  if (maps.rep.cols() != k)
    fail(ErrorCode::NotPSD, "trace form on coefficient algebra degenerate");

  CoefficientModule out;
  out.mod.coeff = b;
  out.mod.dim = k;
  out.to_coords = maps.co;
  out.to_algebra = maps.rep;
  out.mod.right_act.reserve(static_cast<size_t>(k));
  out.left_B.reserve(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t) {
    CMat rm = b.right_mult_matrix(b.basis_element(t));
    CMat lm = b.left_mult_matrix(b.basis_element(t));
    out.mod.right_act.push_back(maps.co * rm * maps.rep);
    out.left_B.push_back(maps.co * lm * maps.rep);
  }
  out.mod.gram = CMat(k * n, k * n);
  for (int i = 0; i < k; ++i) {
    CMat bi = b.element(maps.rep.col(i));
    for (int j = 0; j < k; ++j) {
      CMat bj = b.element(maps.rep.col(j));
      out.mod.gram.block(i * n, j * n, n, n) = bi.adjoint() * bj;
    }
  }
  return out;
}

CMat PointedModule::left_apply_mat(const CMat& a) const {
  CVec c = acting.coords(a);
  CMat out = CMat::Zero(mod.dim, mod.dim);
  for (int j = 0; j < acting.dim(); ++j) out += c(j) * left_act[j];
  return out;
}

CMat PointedModule::vacuum_expectation(const CMat& a) const {
  return mod.inner(cyclic, left_apply_mat(a) * cyclic);
}

CenteredPart centered_part(const PointedModule& pm, const Tolerance& tol) {
  (void)tol;
  const CMat& w = pm.centered_basis;  // m x d, orthonormal columns
  const int d = static_cast<int>(w.cols());
  const int n = pm.mod.coeff.ambient_dim();
  CenteredPart out;
  out.embed = w;
  out.mod.coeff = pm.mod.coeff;
  out.mod.dim = d;
  for (int t = 0; t < pm.mod.coeff.dim(); ++t)
    out.mod.right_act.push_back(w.adjoint() * pm.mod.right_act[t] * w);
  out.mod.gram = CMat(d * n, d * n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.mod.gram.block(i * n, j * n, n, n) =
          pm.mod.inner(w.col(i), w.col(j));
  for (int t = 0; t < pm.mod.coeff.dim(); ++t) {
    CMat lb = pm.left_apply_mat(pm.mod.coeff.basis_element(t));
    out.left_B.push_back(w.adjoint() * lb * w);
  }
  return out;
}

Complex FaithfulStateRep::apply(const CMat& b) const {
  CVec c = algebra.coords(b);
  Complex out = 0.0;
  for (int i = 0; i < algebra.dim(); ++i) out += c(i) * values(i);
  return out;
}

FaithfulStateRep FaithfulStateRep::trace_state(const FiniteCStarAlgebra& b) {
  FaithfulStateRep rep;
  rep.algebra = b;
  rep.values = CVec(b.dim());
  for (int i = 0; i < b.dim(); ++i)
    rep.values(i) =
        b.basis_element(i).trace() / static_cast<double>(b.ambient_dim());
  return rep;
}

bool FaithfulStateRep::is_faithful(const Tolerance& tol) const {
  const int k = algebra.dim();
  CMat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      CMat prod = algebra.basis_element(i).adjoint() * algebra.basis_element(j);
      CVec c = algebra.coords(prod);
      Complex v = 0.0;
      for (int t = 0; t < k; ++t) v += c(t) * values(t);
      gram(i, j) = v;
    }
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(gram),
                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol.abs_eps;
}

CMat scalarize(const HilbertModule& e, const FaithfulStateRep& rep) {
  if (!rep.algebra.same_span(e.coeff))
    fail(ErrorCode::MixedCoefficients,
         "scalarizing state lives on a different algebra");
  CMat out(e.dim, e.dim);
  for (int i = 0; i < e.dim; ++i)
    for (int j = 0; j < e.dim; ++j) out(i, j) = rep.apply(e.inner_block(i, j));
  return out;
}

PointedModule gns_module(const ConditionalExpectation& ce,
                         const Tolerance& tol) {
  if (!gns_faithful(ce, tol))
    fail(ErrorCode::NotFaithful,
         "GNS representation of the conditional expectation is not faithful");
  const FiniteCStarAlgebra& a = ce.source();
  const FiniteCStarAlgebra& b = ce.target();
  const int k = a.dim();
  const int n = a.ambient_dim();

  // B-valued Gram over A's basis and its ambient-trace scalarization.
  std::vector<CMat> phi_gram(static_cast<size_t>(k * k));
  CMat gram(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      CMat value = ce.apply(a.basis_element(i).adjoint() * a.basis_element(j));
      phi_gram[static_cast<size_t>(i * k + j)] = value;
      gram(i, j) = value.trace() / static_cast<double>(n);
    }
  QuotientMaps maps = quotient_from_gram(gram, tol);
  const int m = static_cast<int>(maps.rep.cols());

  PointedModule pm;
  pm.mod.coeff = b;
  pm.mod.dim = m;
  pm.acting = a;
  pm.representatives = maps.rep;
  pm.cyclic = maps.co * a.unit_coords();

  pm.mod.gram = CMat(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CMat block = CMat::Zero(n, n);
      for (int s = 0; s < k; ++s) {
        if (maps.rep(s, i) == Complex(0.0)) continue;
        for (int t = 0; t < k; ++t)
          block += std::conj(maps.rep(s, i)) * maps.rep(t, j) *
                   phi_gram[static_cast<size_t>(s * k + t)];
      }
      pm.mod.gram.block(i * n, j * n, n, n) = block;
    }

  for (int t = 0; t < b.dim(); ++t) {
    CMat rm = a.right_mult_matrix(b.basis_element(t));
    pm.mod.right_act.push_back(maps.co * rm * maps.rep);
  }
  for (int j = 0; j < k; ++j) {
    CMat lm = a.left_mult_matrix(a.basis_element(j));
    pm.left_act.push_back(maps.co * lm * maps.rep);
  }

  pm.vac_basis = CMat(m, b.dim());
  for (int t = 0; t < b.dim(); ++t)
    pm.vac_basis.col(t) = maps.co * a.coords(b.basis_element(t));

  // Complement = image of ker(phi), orthonormalized. Faithfulness of the
  // ambient trace makes the scalar complement equal the B-orthogonal one.
  CMat kernel = ce.kernel_coords(tol);
  pm.centered_basis = orthonormal_columns(maps.co * kernel, tol);
  if (pm.centered_basis.cols() + b.dim() != m)
    fail(ErrorCode::InvalidCE,
         "cyclic splitting dimensions do not add up");
  return pm;
}

InteriorTensor interior_tensor(const HilbertModule& e1, const HilbertModule& e2,
                               const std::vector<CMat>& connect,
                               const Tolerance& tol) {
  const FiniteCStarAlgebra& b1 = e1.coeff;
  if (static_cast<int>(connect.size()) != b1.dim())
    fail(ErrorCode::ActionMismatch,
         "left action must provide one operator per coefficient basis element");
  for (const CMat& op : connect)
    if (op.rows() != e2.dim || op.cols() != e2.dim)
      fail(ErrorCode::ActionMismatch, "left action operator size mismatch");

  const int m1 = e1.dim;
  const int m2 = e2.dim;
  const int n2 = e2.coeff.ambient_dim();
  const Eigen::Index md = static_cast<Eigen::Index>(m1) * m2;
  if (md > 4096)
    fail(ErrorCode::DimensionMismatch,
         "interior tensor dimension exceeds the dense cap");

  // pi(<e_i, e_k>_B1) for every pair (i, k).
  std::vector<CMat> pairwise(static_cast<size_t>(m1 * m1));
  for (int i = 0; i < m1; ++i)
    for (int k = 0; k < m1; ++k) {
      CVec c = b1.coords(e1.inner_block(i, k));
      CMat op = CMat::Zero(m2, m2);
      for (int t = 0; t < b1.dim(); ++t) op += c(t) * connect[t];
      pairwise[static_cast<size_t>(i * m1 + k)] = op;
    }

  // C-valued semi-inner product blocks and its trace scalarization.
  FaithfulStateRep tau = FaithfulStateRep::trace_state(e2.coeff);
  CMat big_gram(md * n2, md * n2);
  CMat scalar_gram(md, md);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < m2; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * m2 + j;
      for (int k = 0; k < m1; ++k) {
        const CMat& op = pairwise[static_cast<size_t>(i * m1 + k)];
        for (int l = 0; l < m2; ++l) {
          const Eigen::Index col = static_cast<Eigen::Index>(k) * m2 + l;
          CMat block = e2.inner(CVec::Unit(m2, j), op * CVec::Unit(m2, l));
          big_gram.block(row * n2, col * n2, n2, n2) = block;
          scalar_gram(row, col) = block.trace() / static_cast<double>(n2);
        }
      }
    }

  QuotientMaps maps = quotient_from_gram(scalar_gram, tol);
  const int dim = static_cast<int>(maps.rep.cols());

  InteriorTensor out;
  out.m1 = m1;
  out.m2 = m2;
  out.q = maps.co;
  out.r = maps.rep;
  out.mod.coeff = e2.coeff;
  out.mod.dim = dim;
  for (int t = 0; t < e2.coeff.dim(); ++t) {
    CMat r2 = e2.right_act[t];
    CMat big = CMat::Zero(md, md);
    for (int i = 0; i < m1; ++i)
      big.block(static_cast<Eigen::Index>(i) * m2,
                static_cast<Eigen::Index>(i) * m2, m2, m2) = r2;
    out.mod.right_act.push_back(maps.co * big * maps.rep);
  }
  out.mod.gram = CMat(static_cast<Eigen::Index>(dim) * n2,
                      static_cast<Eigen::Index>(dim) * n2);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      CMat block = CMat::Zero(n2, n2);
      for (Eigen::Index s = 0; s < md; ++s) {
        if (maps.rep(s, i) == Complex(0.0)) continue;
        for (Eigen::Index t = 0; t < md; ++t)
          block += std::conj(maps.rep(s, i)) * maps.rep(t, j) *
                   big_gram.block(s * n2, t * n2, n2, n2);
      }
      out.mod.gram.block(static_cast<Eigen::Index>(i) * n2,
                         static_cast<Eigen::Index>(j) * n2, n2, n2) = block;
    }
  return out;
}

CMat first_factor_operator(const InteriorTensor& t, const CMat& op) {
  if (op.rows() != t.m1 || op.cols() != t.m1)
    fail(ErrorCode::DimensionMismatch, "first factor operator size mismatch");
  CMat big(static_cast<Eigen::Index>(t.m1) * t.m2,
           static_cast<Eigen::Index>(t.m1) * t.m2);
  big.setZero();
  for (int i = 0; i < t.m1; ++i)
    for (int k = 0; k < t.m1; ++k) {
      if (op(i, k) == Complex(0.0)) continue;
      big.block(static_cast<Eigen::Index>(i) * t.m2,
                static_cast<Eigen::Index>(k) * t.m2, t.m2, t.m2) =
          op(i, k) * CMat::Identity(t.m2, t.m2);
    }
  return t.q * big * t.r;
}

CMat tensor_operator(const InteriorTensor& dom, const InteriorTensor& cod,
                     const CMat& v, const CMat& w,
                     const std::vector<CMat>& pi,
                     const std::vector<CMat>& pi_tilde,
                     const Tolerance& tol) {
  if (pi.size() != pi_tilde.size())
    fail(ErrorCode::ActionMismatch, "action bases differ in size");
  double defect = 0.0;
  for (size_t t = 0; t < pi.size(); ++t)
    defect = std::max(defect, operator_norm(w * pi[t] - pi_tilde[t] * w));
  if (defect > 100.0 * tol.abs_eps)
    fail(ErrorCode::IntertwineViolation,
         "intertwining defect " + std::to_string(defect));
  return cod.q * kron(v, w) * dom.r;
}

double module_map_defect(const CMat& op, const HilbertModule& dom,
                         const HilbertModule& cod) {
  double out = 0.0;
  for (int t = 0; t < dom.coeff.dim(); ++t)
    out = std::max(out,
                   operator_norm(op * dom.right_act[t] - cod.right_act[t] * op));
  return out;
}

double adjoint_defect(const CMat& op, const HilbertModule& dom,
                      const HilbertModule& cod) {
  const CMat adj = op.adjoint();
  double out = 0.0;
  for (int i = 0; i < dom.dim; ++i)
    for (int j = 0; j < cod.dim; ++j) {
      CMat lhs = cod.inner(op * CVec::Unit(dom.dim, i), CVec::Unit(cod.dim, j));
      CMat rhs = dom.inner(CVec::Unit(dom.dim, i), adj * CVec::Unit(cod.dim, j));
      out = std::max(out, operator_norm(lhs - rhs));
    }
  return out;
}

}  // namespace amalgam
