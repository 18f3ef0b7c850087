#include "gradekit/torus_action.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <set>
#include <thread>

namespace gradekit {

WeightedAction::WeightedAction(int dim_, int rank_, std::vector<MultiIndex> weights_)
    : dim(dim_), rank(rank_), weights(std::move(weights_)) {
  if (dim < 1) throw std::invalid_argument("WeightedAction: dim must be >= 1");
  if (rank < 1) throw std::invalid_argument("WeightedAction: rank must be >= 1");
  if (static_cast<int>(weights.size()) != dim)
    throw std::invalid_argument("WeightedAction: need one weight per basis vector");
  for (const auto& w : weights) {
    if (w.rank() != rank) throw std::invalid_argument("WeightedAction: weight rank mismatch");
    if (w.abs_max() > 16)
      std::cerr << "gradekit: warning: weight " << w.str()
                << " exceeds |w| <= 16; quadrature grids get large\n";
  }
}

int WeightedAction::band() const {
  int b = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) b = std::max(b, degree(i, j).abs_max());
  return b;
}

static void require_compat(const WeightedAction& alpha, const CMatrix& a) {
  require_square(a);
  if (static_cast<int>(a.rows()) != alpha.dim)
    throw std::invalid_argument("action/matrix dimension mismatch");
}

CMatrix act(const WeightedAction& alpha, const TorusPoint& z, const CMatrix& a) {
  require_compat(alpha, a);
  if (z.rank() != alpha.rank) throw std::invalid_argument("action/torus rank mismatch");
  for (const auto& c : z.coords)
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
      throw std::invalid_argument("act: torus coordinate is not unimodular");
  const int d = alpha.dim;
  // rotate each basis direction once, then multiply phases per entry
  std::vector<std::complex<double>> phase(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) phase[static_cast<size_t>(i)] = z.character(alpha.weights[static_cast<size_t>(i)]);
  CMatrix r(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      r(i, j) = phase[static_cast<size_t>(i)] * std::conj(phase[static_cast<size_t>(j)]) * a(i, j);
  return r;
}

CMatrix spectral_component(const WeightedAction& alpha, const CMatrix& a, const MultiIndex& n) {
  require_compat(alpha, a);
  if (n.rank() != alpha.rank) throw std::invalid_argument("component/degree rank mismatch");
  const int d = alpha.dim;
  CMatrix r = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (alpha.degree(i, j) == n) r(i, j) = a(i, j);
  return r;
}

CMatrix spectral_component_quadrature(const WeightedAction& alpha, const CMatrix& a,
                                      const MultiIndex& n, int points_per_axis, int threads) {
  require_compat(alpha, a);
  if (n.rank() != alpha.rank) throw std::invalid_argument("component/degree rank mismatch");
  if (points_per_axis < 1) throw std::invalid_argument("quadrature needs at least one point per axis");
  const int M = points_per_axis;
  const int k = alpha.rank;
  const int d = alpha.dim;

  std::vector<std::complex<double>> roots(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j)
    roots[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / M);

  long total = 1;
  for (int j = 0; j < k; ++j) total *= M;

  const auto term_at = [&](long flat) -> CMatrix {
    // decode grid index lexicographically: last axis fastest
    std::vector<std::complex<double>> zc(static_cast<size_t>(k));
    long rem = flat;
    for (int j = k - 1; j >= 0; --j) {
      zc[static_cast<size_t>(j)] = roots[static_cast<size_t>(rem % M)];
      rem /= M;
    }
    const TorusPoint z(zc);
    return act(alpha, z, a) * std::conj(z.character(n));
  };

  // Fixed chunk size keeps the reduction order independent of thread count.
  const long chunk = 64;
  const long nchunks = (total + chunk - 1) / chunk;
  std::vector<CMatrix> partial(static_cast<size_t>(nchunks), CMatrix::Zero(d, d));

  const auto run_chunk = [&](long c) {
    CMatrix acc = CMatrix::Zero(d, d);
    const long lo = c * chunk;
    const long hi = std::min(total, lo + chunk);
    for (long f = lo; f < hi; ++f) acc += term_at(f);
    partial[static_cast<size_t>(c)] = acc;
  };

  const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(nchunks)));
  if (nthreads <= 1) {
    for (long c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        for (long c = t; c < nchunks; c += nthreads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  CMatrix sum = CMatrix::Zero(d, d);
  for (long c = 0; c < nchunks; ++c) sum += partial[static_cast<size_t>(c)];
  return sum / static_cast<double>(total);
}

std::vector<MultiIndex> support_degrees(const WeightedAction& alpha, const CMatrix& a, double tol) {
  require_compat(alpha, a);
  std::set<MultiIndex> candidates;
  for (int i = 0; i < alpha.dim; ++i)
    for (int j = 0; j < alpha.dim; ++j) candidates.insert(alpha.degree(i, j));
  const double scale = op_norm(a);
  std::vector<MultiIndex> out;
  if (scale == 0.0) return out;
  for (const auto& n : candidates)
    if (op_norm(spectral_component(alpha, a, n)) > tol * scale) out.push_back(n);
  return out;  // set iteration is lexicographic already
}

std::vector<CMatrix> fixed_algebra_basis(const WeightedAction& alpha) {
  std::vector<CMatrix> basis;
  for (int i = 0; i < alpha.dim; ++i)
    for (int j = 0; j < alpha.dim; ++j)
      if (alpha.degree(i, j).is_zero()) basis.push_back(matrix_unit(alpha.dim, i, j));
  return basis;
}

double continuity_constant(const WeightedAction& alpha, const CMatrix& a) {
  require_compat(alpha, a);
  // |z^n - w^n| <= |n|_1 * max_j |z_j - w_j| for unimodular coordinates,
  // and the entrywise difference bounds the operator norm through HS.
  int l1 = 0;
  for (int i = 0; i < alpha.dim; ++i)
    for (int j = 0; j < alpha.dim; ++j) l1 = std::max(l1, alpha.degree(i, j).abs_sum());
  return static_cast<double>(l1) * hs_norm(a);
}

}  // namespace gradekit
