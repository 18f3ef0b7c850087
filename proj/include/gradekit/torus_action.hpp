#pragma once

#include <vector>

#include "gradekit/matrix_core.hpp"
#include "gradekit/multi_index.hpp"

namespace gradekit {

/// Weighted T^k-action on M_d: z acts by conjugation with the diagonal
/// unitary U(z) = diag(z^{w_i}), so entry (i,j) picks up the character at
/// w_i - w_j. One weight vector per basis vector of the representation space.
struct WeightedAction {
  int dim = 0;
  int rank = 0;
  std::vector<MultiIndex> weights;

  WeightedAction() = default;
  /// Validates sizes and ranks; weight coordinates beyond |w| = 16 produce a
  /// warning on stderr (quadrature grids get large), not an error.
  WeightedAction(int dim_, int rank_, std::vector<MultiIndex> weights_);

  /// weights[i] - weights[j]: the degree of the matrix unit E_ij.
  MultiIndex degree(int i, int j) const { return weights[static_cast<size_t>(i)] - weights[static_cast<size_t>(j)]; }

  /// Largest coordinate magnitude among pairwise weight differences.
  int band() const;
  /// Smallest per-axis grid size making the quadrature exact (2*band + 1).
  int nyquist_points() const { return 2 * band() + 1; }
};

/// alpha_z(a): entrywise multiplication by the character at w_i - w_j.
/// Equals U(z) a U(z)*.
CMatrix act(const WeightedAction& alpha, const TorusPoint& z, const CMatrix& a);

/// Homogeneous component at degree n: keeps entries with w_i - w_j = n.
CMatrix spectral_component(const WeightedAction& alpha, const CMatrix& a, const MultiIndex& n);

/// Haar average (1/M^k) sum over the M^k roots-of-unity grid of
/// alpha_z(a) z^{-n}. Exact (to rounding) once points_per_axis > 2*band().
/// Grid points are reduced in fixed lexicographic chunk order, so the result
/// is bitwise identical for every thread count.
CMatrix spectral_component_quadrature(const WeightedAction& alpha, const CMatrix& a,
                                      const MultiIndex& n, int points_per_axis,
                                      int threads = 1);

/// Degrees with component norm > tol * op_norm(a), in lexicographic order.
std::vector<MultiIndex> support_degrees(const WeightedAction& alpha, const CMatrix& a,
                                        double tol = kDefaultTol);

/// Matrix units E_ij with w_i = w_j; spans the fixed-point algebra.
std::vector<CMatrix> fixed_algebra_basis(const WeightedAction& alpha);

/// Lipschitz constant C(a) with
///   ||act(z,a) - act(w,a)|| <= C(a) * max_j |z_j - w_j|
/// computed from the weights (largest l1 degree) and the HS norm of a.
double continuity_constant(const WeightedAction& alpha, const CMatrix& a);

}  // namespace gradekit
