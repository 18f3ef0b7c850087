#include "gradekit/matrix_core.hpp"

#include <cmath>
#include <stdexcept>

namespace gradekit {

CMatrix matrix_unit(int d, int i, int j) {
  CMatrix e = CMatrix::Zero(d, d);
  e(i, j) = {1.0, 0.0};
  return e;
}

void require_square(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw std::invalid_argument("matrix must be square with dim >= 1");
}

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix dimension mismatch");
}

void require_finite(const CMatrix& a) {
  if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
}

double op_norm(const CMatrix& a) {
  require_square(a);
  require_finite(a);
  const int d = static_cast<int>(a.rows());
  if (d <= 64) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
  }
  // Power iteration on a*a for larger dims (exactness over speed does not
  // pay off there).
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(d);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = nw;
    v = w;
    if (it > 2 && std::abs(next - lambda) <= 1e-14 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

std::complex<double> hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const CMatrix& a) { return a.norm(); }

Eigen::VectorXcd flatten(const CMatrix& a) {
  const int d = static_cast<int>(a.rows());
  Eigen::VectorXcd v(a.size());
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < static_cast<int>(a.cols()); ++j) v(idx++) = a(i, j);
  return v;
}

double subspace_residual(const CMatrix& a, const std::vector<CMatrix>& basis) {
  require_square(a);
  if (basis.empty()) return hs_norm(a);
  const Eigen::Index n = a.size();
  Eigen::MatrixXcd cols(n, static_cast<Eigen::Index>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    require_same_dim(a, basis[c]);
    cols.col(static_cast<Eigen::Index>(c)) = flatten(basis[c]);
  }
  const Eigen::VectorXcd va = flatten(a);
  const Eigen::VectorXcd x =
      cols.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(va);
  return (va - cols * x).norm();
}

int numerical_rank(const std::vector<CMatrix>& mats, double tol) {
  if (mats.empty()) throw std::invalid_argument("numerical_rank: empty list");
  const Eigen::Index n = mats.front().size();
  Eigen::MatrixXcd rows(static_cast<Eigen::Index>(mats.size()), n);
  for (size_t r = 0; r < mats.size(); ++r) {
    require_same_dim(mats.front(), mats[r]);
    rows.row(static_cast<Eigen::Index>(r)) = flatten(mats[r]).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rows);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

}  // namespace gradekit
