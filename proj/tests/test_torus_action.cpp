#include <doctest.h>

#include <complex>
#include <set>

#include "gradekit/rng.hpp"
#include "gradekit/torus_action.hpp"

using namespace gradekit;

namespace {

WeightedAction make_action(std::vector<MultiIndex> weights) {
  const int d = static_cast<int>(weights.size());
  const int k = weights.front().rank();
  return WeightedAction(d, k, std::move(weights));
}

// Oracle: conjugation by the explicit diagonal unitary U(z) = diag(z^{w_i}).
CMatrix conjugation_oracle(const WeightedAction& alpha, const TorusPoint& z, const CMatrix& a) {
  CMatrix u = CMatrix::Zero(alpha.dim, alpha.dim);
  for (int i = 0; i < alpha.dim; ++i) u(i, i) = z.character(alpha.weights[static_cast<size_t>(i)]);
  return u * a * u.adjoint();
}

WeightedAction random_action(Rng& rng, int d, int k, int wmax) {
  std::vector<MultiIndex> w;
  for (int i = 0; i < d; ++i) w.push_back(rng.multi_index(k, -wmax, wmax));
  return WeightedAction(d, k, std::move(w));
}

}  // namespace

TEST_CASE("act: identity point, forced phase, conjugation oracle") {
  const auto alpha = make_action({MultiIndex{1}, MultiIndex{0}});
  Rng rng(11);
  const CMatrix a = rng.matrix(2);
  CHECK((act(alpha, TorusPoint::one(1), a) - a).norm() == 0.0);

  const CMatrix e12 = matrix_unit(2, 0, 1);
  const TorusPoint i_point(std::vector<std::complex<double>>{{0.0, 1.0}});
  CHECK((act(alpha, i_point, e12) - std::complex<double>(0.0, 1.0) * e12).norm() < 1e-15);

  Rng rng2(12);
  for (int t = 0; t < 10; ++t) {
    const auto beta = random_action(rng2, 5, 2, 3);
    const CMatrix m = rng2.matrix(5);
    const TorusPoint z = rng2.torus_point(2);
    CHECK(op_norm(act(beta, z, m) - conjugation_oracle(beta, z, m)) < 1e-12);
  }
}

TEST_CASE("act validates ranks and unimodularity") {
  const auto alpha = make_action({MultiIndex{1}, MultiIndex{0}});
  CHECK_THROWS_AS(act(alpha, TorusPoint::one(2), CMatrix::Identity(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(act(alpha, TorusPoint::one(1), CMatrix::Identity(3, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(TorusPoint(std::vector<std::complex<double>>{{0.5, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("spectral_component: masks, completeness, quadrature agreement") {
  const auto alpha = make_action({MultiIndex{1}, MultiIndex{0}});
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK((spectral_component(alpha, id, MultiIndex{0}) - id).norm() == 0.0);
  CHECK(spectral_component(alpha, id, MultiIndex{1}).norm() == 0.0);

  const CMatrix e12 = matrix_unit(2, 0, 1);
  CHECK((spectral_component(alpha, e12, MultiIndex{1}) - e12).norm() == 0.0);
  CHECK(spectral_component(alpha, e12, MultiIndex{0}).norm() == 0.0);

  Rng rng(13);
  const auto beta = random_action(rng, 6, 1, 3);
  const CMatrix a = rng.matrix(6);
  CMatrix sum = CMatrix::Zero(6, 6);
  for (const auto& n : support_degrees(beta, a)) {
    const CMatrix comp = spectral_component(beta, a, n);
    sum += comp;
    // the Nyquist quadrature is the independent realization of the average
    CHECK(op_norm(comp - spectral_component_quadrature(beta, a, n, beta.nyquist_points())) <
          1e-12);
  }
  CHECK(op_norm(sum - a) < 1e-12);
}

TEST_CASE("single-degree elements reproduce or vanish under the component map") {
  Rng rng(14);
  const auto alpha = random_action(rng, 5, 2, 2);
  const CMatrix a = rng.matrix(5);
  for (const auto& h : support_degrees(alpha, a)) {
    const CMatrix single = spectral_component(alpha, a, h);
    for (const auto& g : support_degrees(alpha, a)) {
      const CMatrix back = spectral_component(alpha, single, g);
      if (g == h)
        CHECK(op_norm(back - single) == 0.0);
      else
        CHECK(op_norm(back) == 0.0);
    }
  }
}

TEST_CASE("quadrature: exactness at Nyquist, identity at any M, aliasing below it") {
  const auto alpha = make_action({MultiIndex{2}, MultiIndex{0}});
  REQUIRE(alpha.band() == 2);
  REQUIRE(alpha.nyquist_points() == 5);

  const CMatrix id = CMatrix::Identity(2, 2);
  for (int m = 1; m <= 4; ++m)
    CHECK(op_norm(spectral_component_quadrature(alpha, id, MultiIndex{0}, m) - id) < 1e-13);

  // M = 3 < 5: degree 2 aliases onto -1, and the sum evaluates to E12 exactly
  const CMatrix e12 = matrix_unit(2, 0, 1);
  const CMatrix aliased = spectral_component_quadrature(alpha, e12, MultiIndex{-1}, 3);
  CHECK(op_norm(aliased - e12) < 1e-12);
  // at the Nyquist grid the same component is honest again
  CHECK(op_norm(spectral_component_quadrature(alpha, e12, MultiIndex{-1}, 5)) < 1e-12);
}

TEST_CASE("quadrature is bitwise identical across thread counts") {
  Rng rng(15);
  const auto alpha = random_action(rng, 4, 2, 2);
  const CMatrix a = rng.matrix(4);
  const CMatrix one = spectral_component_quadrature(alpha, a, MultiIndex{1, 0},
                                                    alpha.nyquist_points(), 1);
  const CMatrix three = spectral_component_quadrature(alpha, a, MultiIndex{1, 0},
                                                      alpha.nyquist_points(), 3);
  const CMatrix eight = spectral_component_quadrature(alpha, a, MultiIndex{1, 0},
                                                      alpha.nyquist_points(), 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(one(i, j) == three(i, j));
      CHECK(one(i, j) == eight(i, j));
    }
}

TEST_CASE("support_degrees: identity, matrix unit, dense element") {
  const auto alpha = make_action({MultiIndex{1}, MultiIndex{0}});
  CHECK(support_degrees(alpha, CMatrix::Identity(2, 2)) ==
        std::vector<MultiIndex>{MultiIndex{0}});
  CHECK(support_degrees(alpha, matrix_unit(2, 0, 1)) == std::vector<MultiIndex>{MultiIndex{1}});

  const auto beta = make_action({MultiIndex{0}, MultiIndex{1}, MultiIndex{3}});
  CMatrix dense(3, 3);
  Rng rng(16);
  dense = rng.matrix(3);
  // oracle: enumerate the pairwise weight differences
  std::set<MultiIndex> expected;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) expected.insert(beta.degree(i, j));
  const auto got = support_degrees(beta, dense);
  CHECK(got.size() == expected.size());
  CHECK(std::set<MultiIndex>(got.begin(), got.end()) == expected);
}

TEST_CASE("fixed_algebra_basis enumerates the weight-diagonal matrix units") {
  const auto trivial = make_action({MultiIndex{0}, MultiIndex{0}});
  CHECK(fixed_algebra_basis(trivial).size() == 4);

  const auto alpha = make_action({MultiIndex{1}, MultiIndex{0}});
  const auto basis = fixed_algebra_basis(alpha);
  REQUIRE(basis.size() == 2);
  CHECK((basis[0] - matrix_unit(2, 0, 0)).norm() == 0.0);
  CHECK((basis[1] - matrix_unit(2, 1, 1)).norm() == 0.0);

  const auto beta = make_action({MultiIndex{0}, MultiIndex{0}, MultiIndex{1}});
  CHECK(fixed_algebra_basis(beta).size() == 5);  // the 2x2 corner plus E33
}

TEST_CASE("automorphism suite") {
  Rng rng(17);
  for (int t = 0; t < 8; ++t) {
    const auto alpha = random_action(rng, 5, 2, 3);
    const CMatrix a = rng.matrix(5);
    const CMatrix b = rng.matrix(5);
    const TorusPoint z = rng.torus_point(2);
    const TorusPoint w = rng.torus_point(2);

    CHECK(op_norm(act(alpha, z, a * b) - act(alpha, z, a) * act(alpha, z, b)) < 1e-12);
    CHECK(op_norm(act(alpha, z, a.adjoint()) - act(alpha, z, a).adjoint()) < 1e-12);
    CHECK(op_norm(act(alpha, z, act(alpha, w, a)) - act(alpha, z * w, a)) < 1e-12);
    CHECK(std::abs(op_norm(act(alpha, z, a)) - op_norm(a)) < 1e-12);
  }
}

TEST_CASE("quantitative strong continuity") {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto alpha = random_action(rng, 4, 2, 3);
    const CMatrix a = rng.matrix(4);
    const TorusPoint z = rng.torus_point(2);
    const TorusPoint w = rng.torus_point(2);
    const double c = continuity_constant(alpha, a);
    CHECK(op_norm(act(alpha, z, a) - act(alpha, w, a)) <= c * z.distance(w) + 1e-12);
  }
}
