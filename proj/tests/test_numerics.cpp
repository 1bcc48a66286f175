#include <doctest.h>

#include <random>

#include "amalgam/numerics.hpp"

using namespace amalgam;

namespace {

CMat random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

// Closed-form singular values of a 2x2 complex matrix, used as the
// independent oracle for the operator norm.
double svd2x2_largest(const CMat& m) {
  const CMat g = m.adjoint() * m;
  const double tr = g.trace().real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return std::sqrt(tr / 2.0 + disc);
}

}  // namespace

TEST_CASE("operator_norm identities") {
  CHECK(operator_norm(CMat::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(operator_norm(CMat::Zero(2, 2)) == doctest::Approx(0.0));

  CMat shift(2, 2);
  shift << 0, 2, 0, 0;
  const double expected = svd2x2_largest(shift);
  CHECK(expected == doctest::Approx(2.0));
  CHECK(operator_norm(shift) == doctest::Approx(expected));
}

TEST_CASE("operator_norm rejects non-finite input") {
  CMat bad = CMat::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(operator_norm(bad), Error);
}

TEST_CASE("operator_norm submultiplicative and C* identity on random input") {
  std::mt19937 rng(12345);
  Tolerance tol;
  for (int trial = 0; trial < 20; ++trial) {
    CMat a = random_matrix(6, rng);
    CMat b = random_matrix(6, rng);
    CHECK(operator_norm(a * b) <=
          operator_norm(a) * operator_norm(b) + tol.abs_eps);
    const double na = operator_norm(a);
    CHECK(operator_norm(a.adjoint() * a) ==
          doctest::Approx(na * na).epsilon(tol.rel_eps));
  }
}

TEST_CASE("psd_floor basic verdicts") {
  CHECK(psd_floor(CMat::Identity(3, 3)));
  CMat indef = CMat::Zero(2, 2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  CHECK_FALSE(psd_floor(indef));

  CMat skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(psd_floor(skew), Error);
}

TEST_CASE("psd_floor rejects the Choi matrix of the transpose map") {
  // Choi matrix of the transpose on M_2: C = sum E_ij (x) E_ji.
  CMat choi = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) choi(i * 2 + j, j * 2 + i) = 1.0;
  // Oracle: direct diagonalization.
  Eigen::SelfAdjointEigenSolver<CMat> es(choi, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(-1.0));
  CHECK_FALSE(psd_floor(choi));
}

TEST_CASE("null_space_split basic cases") {
  CHECK(null_space_basis(CMat::Identity(3, 3)).empty());
  CHECK(null_space_basis(CMat::Zero(2, 2)).size() == 2);

  CMat g = CMat::Zero(2, 2);
  g(0, 0) = 1.0;
  auto basis = null_space_basis(g);
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(basis[0](1)) == doctest::Approx(1.0));

  CMat neg = CMat::Identity(2, 2);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(null_space_split(neg), Error);
}

TEST_CASE("null vectors annihilate the Gram within tolerance") {
  std::mt19937 rng(777);
  Tolerance tol;
  for (int trial = 0; trial < 10; ++trial) {
    CMat a = random_matrix(5, rng);
    CMat g = a.adjoint() * a;
    g.row(3).setZero();  // plant a null direction
    g.col(3).setZero();
    auto basis = null_space_basis(g);
    const double scale = operator_norm(g);
    for (const CVec& v : basis)
      CHECK((g * v).norm() <= 10.0 * tol.abs_eps * scale);
  }
}

TEST_CASE("least squares residual reporting") {
  CMat a(3, 2);
  a << 1, 0, 0, 1, 0, 0;
  CVec b(3);
  b << 2, 3, 4;
  LeastSquares ls = solve_least_squares(a, b);
  CHECK(ls.solution(0) == doctest::Approx(2.0));
  CHECK(ls.solution(1) == doctest::Approx(3.0));
  CHECK(ls.residual == doctest::Approx(4.0));
}

TEST_CASE("kron against hand-computed entries") {
  CMat a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  CMat k = kron(a, b);
  CHECK(k(0, 1) == Complex(1.0));
  CHECK(k(0, 3) == Complex(2.0));
  CHECK(k(3, 0) == Complex(3.0));
  CVec x(2), y(2);
  x << 1, 2;
  y << 3, 4;
  CHECK((kron_vec(x, y) - kron(x, y)).norm() == doctest::Approx(0.0));
}
