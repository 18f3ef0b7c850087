#pragma once

#include <concepts>
#include <map>
#include <stdexcept>
#include <vector>

#include "gradekit/matrix_core.hpp"
#include "gradekit/multi_index.hpp"
#include "gradekit/torus_action.hpp"

namespace gradekit {

// ============================================================================
// The reconstruction engine: partial sums and Cesaro means over Z^k
// ============================================================================

/// Capability shared by matrix elements and band-limited function models:
/// finitely many homogeneous components, plus the ambient element operations
/// and a norm. One engine drives both.
template <typename X>
concept GradedElementModel = requires(const X& x, const MultiIndex& n,
                                      const typename X::Element& e, double s) {
  typename X::Element;
  { x.rank() } -> std::convertible_to<int>;
  { x.support() } -> std::convertible_to<std::vector<MultiIndex>>;
  { x.component(n) } -> std::convertible_to<typename X::Element>;
  { x.value() } -> std::convertible_to<typename X::Element>;
  { x.zero() } -> std::convertible_to<typename X::Element>;
  { x.add(e, e) } -> std::convertible_to<typename X::Element>;
  { x.scale(s, e) } -> std::convertible_to<typename X::Element>;
  { x.norm(e) } -> std::convertible_to<double>;
};

namespace detail {
inline void require_nonneg(const MultiIndex& n, const char* who) {
  if (!n.nonnegative())
    throw std::invalid_argument(std::string(who) + ": negative coordinate in " + n.str());
}
}  // namespace detail

/// s_n(x): sum of components over the box -n <= m <= n, lexicographic order.
template <GradedElementModel X>
typename X::Element partial_sum(const X& x, const MultiIndex& n) {
  detail::require_nonneg(n, "partial_sum");
  typename X::Element acc = x.zero();
  for_each_in_box(-n, n, [&](const MultiIndex& m) { acc = x.add(acc, x.component(m)); });
  return acc;
}

/// sigma_N(x): the average of s_n(x) over the box 0 <= n <= N.
template <GradedElementModel X>
typename X::Element cesaro_mean(const X& x, const MultiIndex& N) {
  detail::require_nonneg(N, "cesaro_mean");
  typename X::Element acc = x.zero();
  double count = 1.0;
  for (int j = 0; j < N.rank(); ++j) count *= N[j] + 1;
  for_each_in_box(MultiIndex::zero(N.rank()), N,
                  [&](const MultiIndex& n) { acc = x.add(acc, partial_sum(x, n)); });
  return x.scale(1.0 / count, acc);
}

/// The closed-form damping factor: prod_j max(0, N_j+1-|m_j|)/(N_j+1).
inline double fejer_weight(const MultiIndex& N, const MultiIndex& m) {
  require_same_rank(N, m);
  detail::require_nonneg(N, "fejer_weight");
  double w = 1.0;
  for (int j = 0; j < N.rank(); ++j) {
    const int c = N[j] + 1 - std::abs(m[j]);
    if (c <= 0) return 0.0;
    w *= static_cast<double>(c) / (N[j] + 1);
  }
  return w;
}

/// Closed form of the Cesaro mean: the Fejer-weighted component sum.
/// Agrees with cesaro_mean on every input.
template <GradedElementModel X>
typename X::Element fejer_sum(const X& x, const MultiIndex& N) {
  detail::require_nonneg(N, "fejer_sum");
  typename X::Element acc = x.zero();
  for (const MultiIndex& m : x.support()) {
    const double w = fejer_weight(N, m);
    if (w > 0.0) acc = x.add(acc, x.scale(w, x.component(m)));
  }
  return acc;
}

struct ConvergenceRow {
  MultiIndex N;
  double error;
};

/// norm(sigma_N(x) - x) for each requested N, in input order. Uses the
/// closed form; the equivalence with the double-sum definition is part of
/// the engine's test suite.
template <GradedElementModel X>
std::vector<ConvergenceRow> convergence_table(const X& x, const std::vector<MultiIndex>& Ns) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(Ns.size());
  const typename X::Element ref = x.value();
  for (const MultiIndex& N : Ns) {
    const typename X::Element diff = x.add(fejer_sum(x, N), x.scale(-1.0, ref));
    rows.push_back({N, x.norm(diff)});
  }
  return rows;
}

// ============================================================================
// Matrix-valued graded elements
// ============================================================================

/// Finitely supported element given by explicit components.
struct ComponentMapGraded {
  using Element = CMatrix;

  int rank_ = 1;
  int dim_ = 1;
  std::map<MultiIndex, CMatrix> components;

  ComponentMapGraded(int rank, int dim) : rank_(rank), dim_(dim) {}

  void set(const MultiIndex& m, CMatrix c) { components[m] = std::move(c); }

  int rank() const { return rank_; }
  std::vector<MultiIndex> support() const {
    std::vector<MultiIndex> s;
    s.reserve(components.size());
    for (const auto& [m, c] : components) s.push_back(m);
    return s;
  }
  CMatrix component(const MultiIndex& m) const {
    auto it = components.find(m);
    return it == components.end() ? zero() : it->second;
  }
  CMatrix value() const {
    CMatrix v = zero();
    for (const auto& [m, c] : components) v += c;
    return v;
  }
  CMatrix zero() const { return CMatrix::Zero(dim_, dim_); }
  CMatrix add(const CMatrix& a, const CMatrix& b) const { return a + b; }
  CMatrix scale(double s, const CMatrix& a) const { return s * a; }
  double norm(const CMatrix& a) const { return op_norm(a); }
};

/// Element of M_d graded by a weighted action; components are the spectral
/// components, the norm is the operator norm.
struct ActionGraded {
  using Element = CMatrix;

  WeightedAction action;
  CMatrix a;
  std::vector<MultiIndex> support_;

  ActionGraded(WeightedAction action_, CMatrix a_, double tol = kDefaultTol)
      : action(std::move(action_)), a(std::move(a_)) {
    support_ = support_degrees(action, a, tol);
  }

  int rank() const { return action.rank; }
  std::vector<MultiIndex> support() const { return support_; }
  CMatrix component(const MultiIndex& m) const { return spectral_component(action, a, m); }
  CMatrix value() const { return a; }
  CMatrix zero() const { return CMatrix::Zero(action.dim, action.dim); }
  CMatrix add(const CMatrix& x, const CMatrix& y) const { return x + y; }
  CMatrix scale(double s, const CMatrix& x) const { return s * x; }
  double norm(const CMatrix& x) const { return op_norm(x); }
};

}  // namespace gradekit
