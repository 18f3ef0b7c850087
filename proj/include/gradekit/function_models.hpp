#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "gradekit/cesaro.hpp"
#include "gradekit/multi_index.hpp"

namespace gradekit {

// ============================================================================
// Band-limited elements of C(T)
// ============================================================================

/// p(t) = sum_{|n| <= B} c_n e^{2 pi i n t}. Coefficients are stored for
/// -B..B; coefficient(n) is exact inside the band and 0 outside.
class TrigPoly {
 public:
  TrigPoly() : band_(0), coeffs_(1, {0.0, 0.0}) {}
  explicit TrigPoly(int band);
  TrigPoly(int band, std::vector<std::complex<double>> coeffs);

  static TrigPoly monomial(int n, std::complex<double> c = {1.0, 0.0});

  int band() const { return band_; }
  std::complex<double> coefficient(int n) const;
  void set_coefficient(int n, std::complex<double> v);

  std::complex<double> eval(double t) const;

  /// Grid maximum over 4*(2B+1) uniform points. The 4x oversampling keeps
  /// the grid value within about 1% of the true sup norm.
  double sup_norm() const;

  /// Gauge action of the circle: c_n -> z^n c_n.
  TrigPoly rotated(std::complex<double> z) const;

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly scaled(std::complex<double> s) const;

 private:
  int band_;
  std::vector<std::complex<double>> coeffs_;  // c_{-B} .. c_B
};

/// Coefficients damped by the Fejer weights for the given N (the closed form
/// of the Cesaro mean acting on a band-limited element).
TrigPoly fejer_mean(const TrigPoly& g, int N);

// ============================================================================
// Uniform circle samples
// ============================================================================

/// f(e^{2 pi i j / M}) for j = 0..M-1.
struct UniformSamples {
  std::vector<std::complex<double>> values;

  int size() const { return static_cast<int>(values.size()); }
  double sup_norm() const;

  static UniformSamples from_function(int M, const std::function<std::complex<double>(double)>& f);
  static UniformSamples from_poly(const TrigPoly& p, int M);
};

/// DFT average (1/M) sum_j f_j z_j^{-n}; exact for TrigPoly samples once
/// M > 2B. When |n| >= M/2 the value aliases: the flag is set (if given) and
/// a warning goes to stderr.
std::complex<double> fourier_coefficient(const UniformSamples& f, int n, bool* aliased = nullptr);

/// sigma_N of the sample DFT series, evaluated back on the same grid
/// (compensated accumulation).
UniformSamples fejer_reconstruction(const UniformSamples& f, int N);

// ============================================================================
// Arcs and restricted functions
// ============================================================================

/// Closed arc {e^{2 pi i t} : t in [t0, t1]} with an inclusive uniform grid.
/// Requires 0 <= t0 < t1 < t0 + 1 (a proper subset; the gap is never empty).
struct Arc {
  double t0 = 0.0;
  double t1 = 0.5;
  int grid_size = 256;

  Arc(double t0_, double t1_, int grid_size_);
  static Arc default_arc() { return Arc(0.0, 0.5, 256); }

  double point(int j) const {
    return t0 + (t1 - t0) * static_cast<double>(j) / (grid_size - 1);
  }
  double gap_length() const { return (t0 + 1.0) - t1; }
};

/// Grid-sampled element of C(X).
struct SampledFunction {
  Arc arc;
  std::vector<std::complex<double>> values;

  SampledFunction(Arc arc_, std::vector<std::complex<double>> values_);
  double sup_norm() const;
};

SampledFunction restrict_to_arc(const TrigPoly& g, const Arc& X);

/// Numerical rank of the family {e_n|_X : lo <= n <= hi} under the grid
/// inner product, computed from the singular values of the sampling matrix
/// (the square root of the Gram matrix, so the count is not distorted by
/// the squared conditioning of the explicit product).
int arc_independence_rank(const Arc& X, int degree_lo, int degree_hi,
                          double tol = kDefaultTol);

// ============================================================================
// Extensions from the arc to the circle
// ============================================================================

enum class GapBridge {
  linear_gap,  // chord between the endpoint values
  smooth_gap,  // raised-cosine blend of the two one-sided linear extrapolations
};

inline constexpr int kDefaultFineGrid = 4096;
inline constexpr int kDefaultExtensionBand = 1024;

struct ExtensionResult {
  TrigPoly poly;
  double extension_error;  // max |poly(x_j) - f(x_j)| over the arc grid
};

/// Extends f in C(X) to a band-limited element of C(T): interpolate f on the
/// arc, fill the gap with the chosen bridge (endpoint-matching is exact at
/// the arc ends), sample on a fine uniform circle grid, truncate the DFT to
/// the band. Different bridges give genuinely different coefficient
/// sequences for the same f.
ExtensionResult extend(const SampledFunction& f, GapBridge method,
                       int band = kDefaultExtensionBand, int fine_grid = kDefaultFineGrid);

// ============================================================================
// The zero-component functional on a restricted arc
// ============================================================================

struct LowerBoundResult {
  double bound = 0.0;          // certified lower bound 1/V on the functional norm
  double minimax_value = 0.0;  // V: best max-modulus found, on the 4x refined grid
  double solver_value = 0.0;   // the same max-modulus on the solver grid
  bool improved = false;       // solver improved on its starting candidates
};

/// Lower bound on the norm of  sum c_n e_n|_X  |->  c_0  on the span of
/// {e_n|_X : |n| <= band} with the sup norm on X. Minimizes the grid
/// max-modulus subject to c_0 = 1 by projected subgradient descent, started
/// from the Fejer kernel translated to the gap center (and the constant
/// candidate); any feasible value V certifies the bound 1/V. The returned
/// bound is evaluated on a 4x refined grid.
LowerBoundResult zero_component_norm_lower_bound(const Arc& X, int band, int iters = 5000);

// ============================================================================
// Graded-element adapters for the reconstruction engine
// ============================================================================

/// Band-limited element of C(T) with components c_n e_n.
struct TrigPolyGraded {
  using Element = TrigPoly;

  TrigPoly p;

  explicit TrigPolyGraded(TrigPoly p_) : p(std::move(p_)) {}

  int rank() const { return 1; }
  std::vector<MultiIndex> support() const {
    std::vector<MultiIndex> s;
    for (int n = -p.band(); n <= p.band(); ++n) s.push_back(MultiIndex{n});
    return s;
  }
  TrigPoly component(const MultiIndex& m) const {
    return TrigPoly::monomial(m[0], p.coefficient(m[0]));
  }
  TrigPoly value() const { return p; }
  TrigPoly zero() const { return TrigPoly(); }
  TrigPoly add(const TrigPoly& a, const TrigPoly& b) const { return a + b; }
  TrigPoly scale(double s, const TrigPoly& a) const { return a.scaled({s, 0.0}); }
  double norm(const TrigPoly& a) const { return a.sup_norm(); }
};

/// Grid-sampled element of C(T) with components fhat(n) e_n sampled on the
/// same grid; the analysis band caps the support.
struct CircleSamplesGraded {
  using Element = UniformSamples;

  UniformSamples f;
  int band;
  std::vector<std::complex<double>> coeffs;  // fhat(-band) .. fhat(band)

  CircleSamplesGraded(UniformSamples f_, int band_);

  int rank() const { return 1; }
  std::vector<MultiIndex> support() const {
    std::vector<MultiIndex> s;
    for (int n = -band; n <= band; ++n) s.push_back(MultiIndex{n});
    return s;
  }
  UniformSamples component(const MultiIndex& m) const;
  UniformSamples value() const { return f; }
  UniformSamples zero() const {
    return UniformSamples{std::vector<std::complex<double>>(f.values.size(), {0.0, 0.0})};
  }
  UniformSamples add(const UniformSamples& a, const UniformSamples& b) const;
  UniformSamples scale(double s, const UniformSamples& a) const;
  double norm(const UniformSamples& a) const { return a.sup_norm(); }
};

}  // namespace gradekit
