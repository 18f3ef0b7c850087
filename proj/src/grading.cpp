#include "gradekit/grading.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gradekit {

void GradingSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("grading spec: dim must be >= 1");
  if (rank < 1) throw std::invalid_argument("grading spec: rank must be >= 1");
  if (subspaces.empty()) throw std::invalid_argument("grading spec: no subspaces");
  for (const auto& [g, basis] : subspaces) {
    if (g.rank() != rank)
      throw std::invalid_argument("grading spec: degree " + g.str() + " has wrong rank");
    if (basis.empty())
      throw std::invalid_argument("grading spec: empty basis at degree " + g.str());
    for (const auto& m : basis) {
      if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("grading spec: matrix dim mismatch at degree " + g.str());
      require_finite(m);
    }
  }
}

int GradingSpec::total_spanning_count() const {
  int n = 0;
  for (const auto& [g, basis] : subspaces) n += static_cast<int>(basis.size());
  return n;
}

GradingSpec grading_from_action(const WeightedAction& alpha) {
  GradingSpec spec;
  spec.dim = alpha.dim;
  spec.rank = alpha.rank;
  for (int i = 0; i < alpha.dim; ++i)
    for (int j = 0; j < alpha.dim; ++j)
      spec.subspaces[alpha.degree(i, j)].push_back(matrix_unit(alpha.dim, i, j));
  return spec;
}

namespace {

// Orthonormal column basis of the span (rank-revealing, SVD-based).
Eigen::MatrixXcd orthonormal_columns(const std::vector<CMatrix>& basis, double tol) {
  const Eigen::Index n = basis.front().size();
  Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = flatten(basis[c]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

double residual_against(const Eigen::MatrixXcd* q, const CMatrix& a) {
  const Eigen::VectorXcd v = flatten(a);
  if (q == nullptr || q->cols() == 0) return v.norm();
  return (v - (*q) * (q->adjoint() * v)).norm();
}

}  // namespace

GradingReport check_grading(const GradingSpec& spec, double tol) {
  spec.validate();
  GradingReport report;
  report.tol = tol;

  // (i) joint linear independence of the union of the spanning lists
  std::vector<CMatrix> all;
  for (const auto& [g, basis] : spec.subspaces)
    all.insert(all.end(), basis.begin(), basis.end());
  report.independence.expected = static_cast<int>(all.size());
  report.independence.rank = numerical_rank(all, tol);
  report.independence.pass = report.independence.rank == report.independence.expected;
  report.topological = report.independence.pass;

  // per-degree orthonormal projectors, built once
  std::map<MultiIndex, Eigen::MatrixXcd> ortho;
  int dim_sum = 0;
  for (const auto& [g, basis] : spec.subspaces) {
    ortho[g] = orthonormal_columns(basis, tol);
    dim_sum += static_cast<int>(ortho[g].cols());
  }
  report.totality.subspace_dim_sum = dim_sum;
  report.totality.full_dim = spec.dim * spec.dim;

  const auto projector = [&](const MultiIndex& g) -> const Eigen::MatrixXcd* {
    auto it = ortho.find(g);
    return it == ortho.end() ? nullptr : &it->second;
  };

  // (ii) adjoint symmetry: a* within tol of span(A_{-g})
  report.adjoint_symmetry.witness_degree = spec.subspaces.begin()->first;
  for (const auto& [g, basis] : spec.subspaces) {
    const Eigen::MatrixXcd* target = projector(-g);
    for (size_t i = 0; i < basis.size(); ++i) {
      const double r = residual_against(target, basis[i].adjoint());
      if (r > report.adjoint_symmetry.worst_residual) {
        report.adjoint_symmetry.worst_residual = r;
        report.adjoint_symmetry.witness_degree = g;
        report.adjoint_symmetry.witness_index = static_cast<int>(i);
      }
    }
  }

  // (iii) multiplicativity: ab within tol of span(A_{g+h}); a missing target
  // subspace counts as {0}
  report.multiplicativity.left_degree = spec.subspaces.begin()->first;
  report.multiplicativity.right_degree = spec.subspaces.begin()->first;
  for (const auto& [g, gbasis] : spec.subspaces) {
    for (const auto& [h, hbasis] : spec.subspaces) {
      const Eigen::MatrixXcd* target = projector(g + h);
      for (size_t i = 0; i < gbasis.size(); ++i) {
        for (size_t j = 0; j < hbasis.size(); ++j) {
          const double r = residual_against(target, gbasis[i] * hbasis[j]);
          if (r > report.multiplicativity.worst_residual) {
            report.multiplicativity.worst_residual = r;
            report.multiplicativity.left_degree = g;
            report.multiplicativity.right_degree = h;
            report.multiplicativity.left_index = static_cast<int>(i);
            report.multiplicativity.right_index = static_cast<int>(j);
          }
        }
      }
    }
  }

  return report;
}

RepresentationReport check_representation(const GradingSpec& spec, const TorusPoint& gamma,
                                          double tol) {
  spec.validate();
  if (gamma.rank() != spec.rank)
    throw std::invalid_argument("check_representation: torus rank mismatch");
  RepresentationReport report;
  report.tol = tol;
  for (const auto& [g, gbasis] : spec.subspaces) {
    const std::complex<double> cg = gamma.character(g);
    for (const auto& a : gbasis) {
      const double adj =
          op_norm((cg * a).adjoint() - gamma.character(-g) * a.adjoint());
      report.worst_adjoint_residual = std::max(report.worst_adjoint_residual, adj);
      for (const auto& [h, hbasis] : spec.subspaces) {
        const std::complex<double> ch = gamma.character(h);
        const std::complex<double> cgh = gamma.character(g + h);
        for (const auto& b : hbasis) {
          const double prod = op_norm((cg * a) * (ch * b) - cgh * (a * b));
          report.worst_product_residual = std::max(report.worst_product_residual, prod);
        }
      }
    }
  }
  return report;
}

GradedAction::GradedAction(GradingSpec spec, double tol) : spec_(std::move(spec)), tol_(tol) {
  spec_.validate();
  const Eigen::Index n = static_cast<Eigen::Index>(spec_.dim) * spec_.dim;
  basis_.resize(n, spec_.total_spanning_count());
  Eigen::Index c = 0;
  for (const auto& [g, basis] : spec_.subspaces) {
    for (const auto& m : basis) {
      basis_.col(c++) = flatten(m);
      column_degree_.push_back(g);
    }
  }
  solver_.compute(basis_);
}

std::map<MultiIndex, CMatrix> GradedAction::decompose(const CMatrix& a) const {
  require_square(a);
  if (static_cast<int>(a.rows()) != spec_.dim)
    throw std::invalid_argument("decompose: dimension mismatch");
  const Eigen::VectorXcd va = flatten(a);
  const Eigen::VectorXcd x = solver_.solve(va);
  const double residual = (basis_ * x - va).norm();
  if (residual > tol_ * std::max(1.0, va.norm()))
    throw DecompositionError("element lies outside the span of the grading (residual " +
                                 std::to_string(residual) + ")",
                             residual);
  std::map<MultiIndex, CMatrix> parts;
  const int d = spec_.dim;
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const MultiIndex& g = column_degree_[static_cast<size_t>(c)];
    auto [it, inserted] = parts.try_emplace(g, CMatrix::Zero(d, d));
    Eigen::VectorXcd col = basis_.col(c);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) it->second(i, j) += x(c) * col(i * d + j);
  }
  return parts;
}

CMatrix GradedAction::apply(const TorusPoint& z, const CMatrix& a) const {
  if (z.rank() != spec_.rank) throw std::invalid_argument("apply: torus rank mismatch");
  const auto parts = decompose(a);
  CMatrix r = CMatrix::Zero(spec_.dim, spec_.dim);
  for (const auto& [g, part] : parts) r += z.character(g) * part;
  return r;
}

CMatrix conditional_expectation(const WeightedAction& alpha, const CMatrix& a) {
  return spectral_component(alpha, a, MultiIndex::zero(alpha.rank));
}

ExpectationAxiomReport check_expectation_axioms(const WeightedAction& alpha, int trials,
                                                double tol, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_expectation_axioms: trials must be >= 1");
  ExpectationAxiomReport report;
  report.trials = trials;
  report.tol = tol;
  report.seed = seed;
  report.min_eigenvalue = 0.0;

  Rng rng(seed);
  const int d = alpha.dim;
  const std::vector<CMatrix> fixed = fixed_algebra_basis(alpha);

  std::vector<MultiIndex> nonzero_degrees;
  {
    std::set<MultiIndex> degs;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) degs.insert(alpha.degree(i, j));
    for (const auto& g : degs)
      if (!g.is_zero()) nonzero_degrees.push_back(g);
  }

  const auto normalized = [&](CMatrix m) {
    const double n = op_norm(m);
    return n > 0 ? CMatrix(m / n) : m;
  };
  const auto fixed_combo = [&] {
    CMatrix x = CMatrix::Zero(d, d);
    for (const auto& e : fixed) x += rng.complex_in_square() * e;
    return normalized(x);
  };

  bool first_eig = true;
  for (int t = 0; t < trials; ++t) {
    const CMatrix a = normalized(rng.matrix(d));
    const CMatrix fa = conditional_expectation(alpha, a);

    report.worst_idempotence =
        std::max(report.worst_idempotence, op_norm(conditional_expectation(alpha, fa) - fa));
    report.worst_contractivity =
        std::max(report.worst_contractivity, op_norm(fa) - op_norm(a));

    const CMatrix positive = conditional_expectation(alpha, a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig((positive + positive.adjoint()) / 2.0);
    const double lam = eig.eigenvalues().minCoeff();
    report.min_eigenvalue = first_eig ? lam : std::min(report.min_eigenvalue, lam);
    first_eig = false;

    const CMatrix x = fixed_combo();
    const CMatrix y = fixed_combo();
    report.worst_bimodule = std::max(
        report.worst_bimodule,
        op_norm(conditional_expectation(alpha, x * a * y) - x * fa * y));

    report.worst_trace_identity =
        std::max(report.worst_trace_identity,
                 std::abs((positive.trace() - std::complex<double>(a.squaredNorm(), 0.0))));

    const CMatrix b = fixed_combo();
    report.worst_fixed_identity =
        std::max(report.worst_fixed_identity, op_norm(conditional_expectation(alpha, b) - b));

    if (!nonzero_degrees.empty()) {
      const MultiIndex& g = nonzero_degrees[static_cast<size_t>(t) % nonzero_degrees.size()];
      const CMatrix single = spectral_component(alpha, rng.matrix(d), g);
      report.worst_offdiag_vanishing =
          std::max(report.worst_offdiag_vanishing, op_norm(conditional_expectation(alpha, single)));
    }
  }
  return report;
}

}  // namespace gradekit
