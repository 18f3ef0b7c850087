#pragma once

#include <complex>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace gradekit {

/// Degree in Z^k: the grading index and the Fourier frequency.
/// Total (lexicographic) order is used for map keys and deterministic
/// enumeration; the componentwise partial order lives in dominated_by().
struct MultiIndex {
  std::vector<int> coords;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> c) : coords(std::move(c)) {}
  MultiIndex(std::initializer_list<int> c) : coords(c) {}

  static MultiIndex zero(int rank) { return MultiIndex(std::vector<int>(static_cast<size_t>(rank), 0)); }

  int rank() const { return static_cast<int>(coords.size()); }
  int operator[](int j) const { return coords[static_cast<size_t>(j)]; }

  bool is_zero() const;
  bool nonnegative() const;
  /// componentwise order: *this <= other iff other - *this has all coords >= 0
  bool dominated_by(const MultiIndex& other) const;

  int abs_sum() const;  // l1 norm
  int abs_max() const;  // l-infinity norm

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  MultiIndex operator-() const;
  bool operator==(const MultiIndex& o) const { return coords == o.coords; }
  bool operator<(const MultiIndex& o) const;  // lexicographic

  std::string str() const;  // "(1,-2)"
};

void require_same_rank(const MultiIndex& a, const MultiIndex& b);

/// Visits every m with lo <= m <= hi (componentwise) in lexicographic order.
/// Empty box (some lo_j > hi_j) visits nothing.
void for_each_in_box(const MultiIndex& lo, const MultiIndex& hi,
                     const std::function<void(const MultiIndex&)>& fn);

/// z^n for unimodular z, by binary exponentiation; negative powers use the
/// conjugate so the result stays on the unit circle.
std::complex<double> unit_ipow(std::complex<double> z, int n);

/// Point of the k-torus, stored as unimodular complex coordinates.
struct TorusPoint {
  std::vector<std::complex<double>> coords;

  TorusPoint() = default;
  /// Validates |z_j| = 1 within 1e-12.
  explicit TorusPoint(std::vector<std::complex<double>> z);

  static TorusPoint one(int rank);
  /// coords_j = exp(2*pi*i*turns_j)
  static TorusPoint from_angles(const std::vector<double>& turns);

  int rank() const { return static_cast<int>(coords.size()); }

  /// Character value z^n = prod_j z_j^{n_j}; unimodular.
  std::complex<double> character(const MultiIndex& n) const;

  TorusPoint operator*(const TorusPoint& o) const;  // pointwise product
  TorusPoint conjugated() const;                    // the inverse point
  double distance(const TorusPoint& o) const;       // max_j |z_j - w_j|
};

}  // namespace gradekit
