#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gradekit {

/// Element of the model algebra A = M_d (complex, dense, square).
using CMatrix = Eigen::MatrixXcd;

/// Relative tolerance against the largest singular value, used as the default
/// by every axiom check.
inline constexpr double kDefaultTol = 1e-9;

CMatrix matrix_unit(int d, int i, int j);

void require_square(const CMatrix& a);
void require_same_dim(const CMatrix& a, const CMatrix& b);
void require_finite(const CMatrix& a);

/// Operator norm (largest singular value). Full SVD for d <= 64, power
/// iteration on a*a beyond that.
double op_norm(const CMatrix& a);

/// Hilbert-Schmidt inner product trace(a* b), conjugate-linear in a.
std::complex<double> hs_inner(const CMatrix& a, const CMatrix& b);

double hs_norm(const CMatrix& a);

/// HS-norm distance from a to the linear span of basis (orthogonal
/// projection). Empty basis gives the HS norm of a.
double subspace_residual(const CMatrix& a, const std::vector<CMatrix>& basis);

/// Rank of the matrix whose rows are the row-major flattened inputs,
/// counting singular values > tol * (largest singular value).
int numerical_rank(const std::vector<CMatrix>& mats, double tol = kDefaultTol);

/// Row-major flattening; the order is fixed for reproducibility.
Eigen::VectorXcd flatten(const CMatrix& a);

}  // namespace gradekit
