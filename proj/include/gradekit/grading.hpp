#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradekit/rng.hpp"
#include "gradekit/torus_action.hpp"

namespace gradekit {

// ============================================================================
// Grading specifications (finite families of spanning subspaces)
// ============================================================================

/// A finite family of subspaces A_g given by explicit spanning matrices.
/// Spanning lists are stored verbatim (not orthonormalized); checks
/// orthonormalize internally.
struct GradingSpec {
  int dim = 0;
  int rank = 0;
  std::map<MultiIndex, std::vector<CMatrix>> subspaces;

  /// Throws std::invalid_argument on dim/rank mismatches or empty bases.
  void validate() const;

  int total_spanning_count() const;
};

struct IndependenceReport {
  bool pass = false;
  int rank = 0;
  int expected = 0;
  int deficit() const { return expected - rank; }
};

struct AdjointReport {
  double worst_residual = 0.0;
  MultiIndex witness_degree;
  int witness_index = 0;
};

struct MultiplicativityReport {
  double worst_residual = 0.0;
  MultiIndex left_degree, right_degree;
  int left_index = 0, right_index = 0;
};

struct TotalityReport {
  int subspace_dim_sum = 0;
  int full_dim = 0;  // d^2
  bool full() const { return subspace_dim_sum == full_dim; }
};

/// Result of the axiom checker. Totality is reported but not required
/// (a grading of a subalgebra is legal input); the component projection is
/// automatically bounded at matrix scale once independence holds.
struct GradingReport {
  IndependenceReport independence;
  AdjointReport adjoint_symmetry;
  MultiplicativityReport multiplicativity;
  TotalityReport totality;
  bool topological = false;
  double tol = kDefaultTol;

  bool pass() const {
    return independence.pass && adjoint_symmetry.worst_residual <= tol &&
           multiplicativity.worst_residual <= tol;
  }
};

/// Canonical grading of M_d induced by a weighted action:
/// A_n = span{E_ij : w_i - w_j = n}.
GradingSpec grading_from_action(const WeightedAction& alpha);

/// Checks joint linear independence, a* in span(A_{-g}), ab in span(A_{g+h})
/// (absent target subspaces count as {0}), and totality.
GradingReport check_grading(const GradingSpec& spec, double tol = kDefaultTol);

struct RepresentationReport {
  double worst_product_residual = 0.0;
  double worst_adjoint_residual = 0.0;
  double tol = kDefaultTol;
  bool pass() const {
    return worst_product_residual <= tol && worst_adjoint_residual <= tol;
  }
};

/// Validates the scaling identities behind the grading-to-action direction:
/// (gamma(g) a)(gamma(h) b) = gamma(g+h) ab and (gamma(g) a)* = gamma(-g) a*
/// over all spanning pairs.
RepresentationReport check_representation(const GradingSpec& spec, const TorusPoint& gamma,
                                          double tol = kDefaultTol);

class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

/// Action evaluator built from a grading: decomposes an element over the
/// joint spanning family (least squares, factored once) and rescales each
/// homogeneous part by the character. On canonical specs this reproduces
/// the weighted action.
class GradedAction {
 public:
  explicit GradedAction(GradingSpec spec, double tol = kDefaultTol);

  /// Splits a into homogeneous parts. Throws DecompositionError (carrying
  /// the residual) if a lies outside the span.
  std::map<MultiIndex, CMatrix> decompose(const CMatrix& a) const;

  CMatrix apply(const TorusPoint& z, const CMatrix& a) const;

  const GradingSpec& spec() const { return spec_; }

 private:
  GradingSpec spec_;
  double tol_;
  Eigen::MatrixXcd basis_;  // d^2 x L, one column per spanning matrix
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> solver_;
  std::vector<MultiIndex> column_degree_;
};

inline GradedAction action_from_grading(GradingSpec spec, double tol = kDefaultTol) {
  return GradedAction(std::move(spec), tol);
}

// ============================================================================
// Conditional expectation onto the fixed-point algebra
// ============================================================================

/// F(a): the degree-0 component; equals the Haar average of the orbit.
CMatrix conditional_expectation(const WeightedAction& alpha, const CMatrix& a);

/// Worst deviations observed over randomized trials. Samples are normalized
/// to unit operator norm so the residuals are directly comparable to tol.
struct ExpectationAxiomReport {
  double worst_idempotence = 0.0;       // ||F(F(a)) - F(a)||
  double worst_contractivity = 0.0;     // max(||F(a)|| - ||a||, 0)
  double min_eigenvalue = 0.0;          // min over trials of lambda_min(F(a*a))
  double worst_bimodule = 0.0;          // ||F(x a y) - x F(a) y||
  double worst_trace_identity = 0.0;    // |trace F(a*a) - ||a||_HS^2|
  double worst_fixed_identity = 0.0;    // ||F(a) - a|| for a in A_0
  double worst_offdiag_vanishing = 0.0; // ||F(a)|| for single-degree a, g != 0
  int trials = 0;
  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;

  bool pass() const {
    return worst_idempotence <= tol && worst_contractivity <= tol &&
           min_eigenvalue >= -tol && worst_bimodule <= tol &&
           worst_trace_identity <= tol && worst_fixed_identity <= tol &&
           worst_offdiag_vanishing <= tol;
  }
};

ExpectationAxiomReport check_expectation_axioms(const WeightedAction& alpha, int trials,
                                                double tol = kDefaultTol,
                                                std::uint64_t seed = kDefaultSeed);

}  // namespace gradekit
