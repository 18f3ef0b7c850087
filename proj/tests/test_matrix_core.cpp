#include <doctest.h>

#include <cmath>
#include <complex>

#include "gradekit/matrix_core.hpp"
#include "gradekit/rng.hpp"

using namespace gradekit;

namespace {

// Independent oracle: power iteration on a*a, never touching the SVD path.
double power_iteration_norm(const CMatrix& a, int iters = 3000) {
  Rng rng(12345);
  Eigen::VectorXcd v(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) v(i) = rng.complex_in_square();
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    lambda = w.norm();
    if (lambda == 0.0) return 0.0;
    v = w / lambda;
  }
  return std::sqrt(lambda);
}

CMatrix random_unitary(Rng& rng, int d) {
  Eigen::HouseholderQR<CMatrix> qr(rng.matrix(d));
  return qr.householderQ() * CMatrix::Identity(d, d);
}

}  // namespace

TEST_CASE("op_norm: identity, diagonal, zero") {
  CHECK(op_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-14));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = {3.0, 0.0};
  d(1, 1) = {0.0, -4.0};
  CHECK(op_norm(d) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(op_norm(CMatrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("op_norm agrees with the power-iteration oracle") {
  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    const CMatrix a = rng.matrix(6);
    CHECK(std::abs(op_norm(a) - power_iteration_norm(a)) < 1e-10);
  }
}

TEST_CASE("op_norm rejects non-finite input") {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = {std::nan(""), 0.0};
  CHECK_THROWS_AS(op_norm(a), std::invalid_argument);
}

TEST_CASE("hs_inner: matrix units and the naive double-loop oracle") {
  const CMatrix e11 = matrix_unit(2, 0, 0);
  const CMatrix e22 = matrix_unit(2, 1, 1);
  CHECK(hs_inner(e11, e11) == std::complex<double>(1.0, 0.0));
  CHECK(hs_inner(e11, e22) == std::complex<double>(0.0, 0.0));

  Rng rng(2);
  const CMatrix a = rng.matrix(5);
  const CMatrix b = rng.matrix(5);
  std::complex<double> naive{0.0, 0.0};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) naive += std::conj(a(i, j)) * b(i, j);
  CHECK(std::abs(hs_inner(a, b) - naive) < 1e-12);

  // conjugate-linear in the first argument
  const std::complex<double> s{0.3, -0.7};
  CHECK(std::abs(hs_inner(s * a, b) - std::conj(s) * hs_inner(a, b)) < 1e-12);
  CHECK(hs_inner(a, a).real() > 0.0);
  CHECK(std::abs(hs_inner(a, a).imag()) < 1e-14);
}

TEST_CASE("hs_inner rejects dimension mismatch") {
  CHECK_THROWS_AS(hs_inner(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("subspace_residual: membership, orthogonality, empty basis") {
  const CMatrix e12 = matrix_unit(2, 0, 1);
  CHECK(subspace_residual(2.0 * e12, {e12}) < 1e-14);
  CHECK(subspace_residual(matrix_unit(2, 0, 0), {matrix_unit(2, 1, 1)}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const CMatrix a = matrix_unit(3, 0, 2) * 2.0;
  CHECK(subspace_residual(a, {}) == doctest::Approx(hs_norm(a)).epsilon(1e-14));
  CHECK_THROWS_AS(subspace_residual(a, {CMatrix::Identity(2, 2)}), std::invalid_argument);
}

TEST_CASE("subspace_residual matches the normal-equations oracle") {
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    const CMatrix a = rng.matrix(4);
    std::vector<CMatrix> basis{rng.matrix(4), rng.matrix(4), rng.matrix(4)};
    // solve the normal equations with the HS Gram matrix
    Eigen::MatrixXcd gram(3, 3);
    Eigen::VectorXcd rhs(3);
    for (int i = 0; i < 3; ++i) {
      rhs(i) = hs_inner(basis[static_cast<size_t>(i)], a);
      for (int j = 0; j < 3; ++j)
        gram(i, j) = hs_inner(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    }
    const Eigen::VectorXcd x = gram.fullPivLu().solve(rhs);
    CMatrix proj = CMatrix::Zero(4, 4);
    for (int i = 0; i < 3; ++i) proj += x(i) * basis[static_cast<size_t>(i)];
    CHECK(std::abs(subspace_residual(a, basis) - hs_norm(a - proj)) < 1e-10);
  }
}

TEST_CASE("subspace_residual is zero on random combinations") {
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    std::vector<CMatrix> basis{rng.matrix(3), rng.matrix(3)};
    const CMatrix combo = rng.complex_in_square() * basis[0] + rng.complex_in_square() * basis[1];
    CHECK(subspace_residual(combo, basis) < 1e-10);
  }
}

TEST_CASE("numerical_rank: basic cases and the Gram oracle") {
  const CMatrix e11 = matrix_unit(2, 0, 0);
  const CMatrix e22 = matrix_unit(2, 1, 1);
  CHECK(numerical_rank({e11, e22}) == 2);
  CHECK(numerical_rank({e11, 2.0 * e11}) == 1);

  Rng rng(5);
  std::vector<CMatrix> mats;
  for (int i = 0; i < 5; ++i) mats.push_back(rng.matrix(4));
  CHECK(numerical_rank(mats) == 5);

  // Gram oracle: eigenvalues of the HS Gram are the squared singular values
  Eigen::MatrixXcd gram(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      gram(i, j) = hs_inner(mats[static_cast<size_t>(i)], mats[static_cast<size_t>(j)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  const double top = eig.eigenvalues().maxCoeff();
  int gram_rank = 0;
  for (Eigen::Index i = 0; i < 5; ++i)
    if (eig.eigenvalues()(i) > kDefaultTol * kDefaultTol * top) ++gram_rank;
  CHECK(gram_rank == 5);
}

TEST_CASE("numerical_rank is invariant under unitary left multiplication") {
  Rng rng(6);
  std::vector<CMatrix> mats{rng.matrix(3), rng.matrix(3),
                            rng.matrix(3) * 0.0};  // deliberately singular family
  mats.push_back(mats[0] + mats[1]);
  const int before = numerical_rank(mats);
  const CMatrix u = random_unitary(rng, 3);
  std::vector<CMatrix> rotated;
  for (const auto& m : mats) rotated.push_back(u * m);
  CHECK(numerical_rank(rotated) == before);
}

TEST_CASE("C*-norm axioms at matrix scale") {
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = rng.matrix(5);
    const CMatrix b = rng.matrix(5);
    CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-10);
    CHECK(std::abs(op_norm(a.adjoint()) - op_norm(a)) < 1e-10);
    CHECK(std::abs(op_norm(a.adjoint() * a) - op_norm(a) * op_norm(a)) < 1e-10);
    CHECK((a.adjoint().adjoint() - a).norm() == 0.0);  // involution is exact
  }
}
