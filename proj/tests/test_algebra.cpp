#include <doctest.h>

#include "amalgam/algebra.hpp"

using namespace amalgam;

namespace {

CMat matrix_unit(int n, int i, int j) {
  CMat e = CMat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// State (w0, w1) on the diagonal algebra of M_2, as an expectation onto
// the scalars.
ConditionalExpectation diag_state(double w0, double w1) {
  FiniteCStarAlgebra diag = diagonal_algebra(2);
  FiniteCStarAlgebra scalars = scalar_algebra(2);
  CMat map(1, 2);
  map << w0, w1;
  return ConditionalExpectation(diag, scalars, map);
}

}  // namespace

TEST_CASE("build_algebra reaches the expected spans") {
  FiniteCStarAlgebra trivial = FiniteCStarAlgebra::generate(2, {});
  CHECK(trivial.dim() == 1);

  FiniteCStarAlgebra diag =
      FiniteCStarAlgebra::generate(2, {matrix_unit(2, 0, 0)});
  CHECK(diag.dim() == 2);

  // A nilpotent generator produces all of M_2; oracle: iterate the
  // closure by hand and track the rank.
  CMat e12 = matrix_unit(2, 0, 1);
  {
    std::vector<CMat> pool{CMat::Identity(2, 2), e12, e12.adjoint()};
    CMat stack(4, 9);
    int col = 0;
    for (const CMat& a : pool)
      for (const CMat& b : pool) stack.col(col++) = vec(a * b);
    Eigen::JacobiSVD<CMat> svd(stack);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-10) ++rank;
    CHECK(rank == 4);
  }
  FiniteCStarAlgebra full = FiniteCStarAlgebra::generate(2, {e12});
  CHECK(full.dim() == 4);
}

TEST_CASE("build_algebra is idempotent on returned bases") {
  FiniteCStarAlgebra alg =
      FiniteCStarAlgebra::generate(2, {matrix_unit(2, 0, 1)});
  FiniteCStarAlgebra again = FiniteCStarAlgebra::generate(2, alg.basis());
  CHECK(again.dim() == alg.dim());
  CHECK(again.same_span(alg));
}

TEST_CASE("from_basis validates closure") {
  // {I, e12} is not closed under adjoints.
  CHECK_THROWS_AS(FiniteCStarAlgebra::from_basis(
                      {CMat::Identity(2, 2), matrix_unit(2, 0, 1)}),
                  Error);
}

TEST_CASE("coords round trip and rejection") {
  FiniteCStarAlgebra diag = diagonal_algebra(2);
  CMat x = CMat::Zero(2, 2);
  x(0, 0) = 3.0;
  x(1, 1) = Complex(0.0, 1.0);
  CVec c = diag.coords(x);
  CHECK((diag.element(c) - x).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(diag.coords(matrix_unit(2, 0, 1)), Error);
}

TEST_CASE("trace expectation on M_2 validates") {
  FiniteCStarAlgebra m2 = full_matrix_algebra(2);
  ConditionalExpectation tr = trace_expectation(m2);
  ValidationReport report = validate_cexp(tr);
  CHECK(report.all_pass());
}

TEST_CASE("diagonal compression on M_2 validates") {
  FiniteCStarAlgebra m2 = full_matrix_algebra(2);
  ConditionalExpectation diag = diagonal_expectation(m2);
  ValidationReport report = validate_cexp(diag);
  CHECK(report.all_pass());
  // Bimodule property in action: compression commutes with diagonals.
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  CMat x(2, 2);
  x << 1, 2, 3, 4;
  CHECK((diag.apply(d * x) - d * diag.apply(x)).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("non-positive functional fails complete positivity") {
  // map(x) = tr(x h) with h = diag(2, -1) is unital but not positive.
  FiniteCStarAlgebra m2 = full_matrix_algebra(2);
  FiniteCStarAlgebra scalars = scalar_algebra(2);
  CMat h = CMat::Zero(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = -1.0;
  CMat map(1, 4);
  for (int j = 0; j < 4; ++j)
    map(0, j) = (m2.basis_element(j) * h).trace();
  ConditionalExpectation ce(m2, scalars, map);

  // Oracle: Gram over the matrix-unit basis diagonalized directly.
  CMat gram(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      gram(i, j) =
          (m2.basis_element(i).adjoint() * m2.basis_element(j) * h).trace();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(gram),
                                         Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() < -0.5);

  ValidationReport report = validate_cexp(ce);
  CHECK_FALSE(report.all_pass());
  bool cp_failed = false;
  for (const CheckResult& c : report.checks)
    if (c.name == "completely_positive" && !c.pass) cp_failed = true;
  CHECK(cp_failed);
}

TEST_CASE("phi(a*) = phi(a)* for validated expectations") {
  FiniteCStarAlgebra m2 = full_matrix_algebra(2);
  for (const ConditionalExpectation& ce :
       {trace_expectation(m2), diagonal_expectation(m2)}) {
    REQUIRE(validate_cexp(ce).all_pass());
    for (const CMat& a : m2.basis())
      CHECK(operator_norm(ce.apply(a.adjoint()) - ce.apply(a).adjoint()) <=
            1e-10);
  }
}

TEST_CASE("gns_faithful distinguishes faithful and degenerate states") {
  CHECK(gns_faithful(diag_state(0.5, 0.5)));
  CHECK_FALSE(gns_faithful(diag_state(1.0, 0.0)));
  CHECK(gns_faithful(trace_expectation(full_matrix_algebra(2))));
  for (int n = 2; n <= 4; ++n)
    CHECK(gns_faithful(trace_expectation(full_matrix_algebra(n))));
}

TEST_CASE("adjoin_complement_unit completes a corner subalgebra") {
  // C . e11 inside M_2 has unit e11 != 1.
  std::vector<CMat> basis{matrix_unit(2, 0, 0)};
  std::vector<CMat> fixed = adjoin_complement_unit(basis);
  REQUIRE(fixed.size() == 2);
  FiniteCStarAlgebra alg = FiniteCStarAlgebra::from_basis(fixed);
  CHECK(alg.dim() == 2);
  // Already-unital bases are returned unchanged.
  CHECK(adjoin_complement_unit(diagonal_algebra(2).basis()).size() == 2);
}
