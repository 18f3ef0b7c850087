#include "gradekit/function_models.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace gradekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Compensated (Kahan) accumulator for complex sums.
struct KahanSum {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> comp{0.0, 0.0};
  void add(std::complex<double> v) {
    const std::complex<double> y = v - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

std::vector<std::complex<double>> unit_roots(int M) {
  std::vector<std::complex<double>> r(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) r[static_cast<size_t>(j)] = std::polar(1.0, kTwoPi * j / M);
  return r;
}

}  // namespace

// ------------------------------------------------------------------ TrigPoly

TrigPoly::TrigPoly(int band) : band_(band), coeffs_(static_cast<size_t>(2 * band + 1), {0.0, 0.0}) {
  if (band < 0) throw std::invalid_argument("TrigPoly: band must be >= 0");
}

TrigPoly::TrigPoly(int band, std::vector<std::complex<double>> coeffs)
    : band_(band), coeffs_(std::move(coeffs)) {
  if (band < 0) throw std::invalid_argument("TrigPoly: band must be >= 0");
  if (static_cast<int>(coeffs_.size()) != 2 * band + 1)
    throw std::invalid_argument("TrigPoly: need 2*band+1 coefficients");
}

TrigPoly TrigPoly::monomial(int n, std::complex<double> c) {
  TrigPoly p(std::abs(n));
  p.set_coefficient(n, c);
  return p;
}

std::complex<double> TrigPoly::coefficient(int n) const {
  if (std::abs(n) > band_) return {0.0, 0.0};
  return coeffs_[static_cast<size_t>(n + band_)];
}

void TrigPoly::set_coefficient(int n, std::complex<double> v) {
  if (std::abs(n) > band_) throw std::invalid_argument("set_coefficient: outside band");
  coeffs_[static_cast<size_t>(n + band_)] = v;
}

std::complex<double> TrigPoly::eval(double t) const {
  const std::complex<double> w = std::polar(1.0, kTwoPi * t);
  std::complex<double> zn = unit_ipow(w, -band_);
  KahanSum acc;
  for (int n = -band_; n <= band_; ++n) {
    acc.add(coeffs_[static_cast<size_t>(n + band_)] * zn);
    zn *= w;
  }
  return acc.sum;
}

double TrigPoly::sup_norm() const {
  const int grid = 4 * (2 * band_ + 1);
  double best = 0.0;
  int at = 0;
  for (int j = 0; j < grid; ++j) {
    const double v = std::abs(eval(static_cast<double>(j) / grid));
    if (v > best) {
      best = v;
      at = j;
    }
  }
  // parabolic refinement around the argmax; |p| is smooth near a peak, and
  // this recovers the between-sample maximum the raw grid can shave off
  const double h = 1.0 / grid;
  const double fm = std::abs(eval((at - 1) * h));
  const double fp = std::abs(eval((at + 1) * h));
  const double denom = fm - 2.0 * best + fp;
  if (denom < 0.0) {
    double delta = 0.5 * (fm - fp) / denom;
    delta = std::clamp(delta, -1.0, 1.0);
    best = std::max(best, std::abs(eval((at + delta) * h)));
  }
  return best;
}

TrigPoly TrigPoly::rotated(std::complex<double> z) const {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::invalid_argument("rotated: z must be unimodular");
  TrigPoly r(band_);
  for (int n = -band_; n <= band_; ++n) r.set_coefficient(n, unit_ipow(z, n) * coefficient(n));
  return r;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  const int b = std::max(band_, o.band_);
  TrigPoly r(b);
  for (int n = -b; n <= b; ++n) r.set_coefficient(n, coefficient(n) + o.coefficient(n));
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled({-1.0, 0.0}); }

TrigPoly TrigPoly::scaled(std::complex<double> s) const {
  TrigPoly r(band_);
  for (int n = -band_; n <= band_; ++n) r.set_coefficient(n, s * coefficient(n));
  return r;
}

TrigPoly fejer_mean(const TrigPoly& g, int N) {
  if (N < 0) throw std::invalid_argument("fejer_mean: N must be >= 0");
  TrigPoly r(g.band());
  for (int n = -g.band(); n <= g.band(); ++n) {
    const double w = std::max(0, N + 1 - std::abs(n)) / static_cast<double>(N + 1);
    r.set_coefficient(n, w * g.coefficient(n));
  }
  return r;
}

// ------------------------------------------------------------ UniformSamples

double UniformSamples::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

UniformSamples UniformSamples::from_function(int M,
                                             const std::function<std::complex<double>(double)>& f) {
  if (M < 1) throw std::invalid_argument("UniformSamples: M must be >= 1");
  UniformSamples s;
  s.values.reserve(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) s.values.push_back(f(static_cast<double>(j) / M));
  return s;
}

UniformSamples UniformSamples::from_poly(const TrigPoly& p, int M) {
  return from_function(M, [&](double t) { return p.eval(t); });
}

std::complex<double> fourier_coefficient(const UniformSamples& f, int n, bool* aliased) {
  const int M = f.size();
  if (M < 1) throw std::invalid_argument("fourier_coefficient: empty samples");
  const bool out_of_band = 2 * std::abs(n) >= M;
  if (aliased) *aliased = out_of_band;
  if (out_of_band)
    std::cerr << "gradekit: warning: coefficient " << n << " aliases on a " << M
              << "-point grid\n";
  const auto roots = unit_roots(M);
  KahanSum acc;
  for (int j = 0; j < M; ++j) {
    const long idx = (static_cast<long>(n) * j) % M;
    const std::complex<double> zn = roots[static_cast<size_t>(idx < 0 ? idx + M : idx)];
    acc.add(f.values[static_cast<size_t>(j)] * std::conj(zn));
  }
  return acc.sum / static_cast<double>(M);
}

UniformSamples fejer_reconstruction(const UniformSamples& f, int N) {
  if (N < 0) throw std::invalid_argument("fejer_reconstruction: N must be >= 0");
  const int M = f.size();
  const auto roots = unit_roots(M);
  std::vector<KahanSum> acc(static_cast<size_t>(M));
  for (int n = -N; n <= N; ++n) {
    const double w = static_cast<double>(N + 1 - std::abs(n)) / (N + 1);
    const std::complex<double> cn = fourier_coefficient(f, n);
    for (int j = 0; j < M; ++j) {
      const long idx = (static_cast<long>(n) * j) % M;
      acc[static_cast<size_t>(j)].add(w * cn * roots[static_cast<size_t>(idx < 0 ? idx + M : idx)]);
    }
  }
  UniformSamples out;
  out.values.reserve(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) out.values.push_back(acc[static_cast<size_t>(j)].sum);
  return out;
}

// ------------------------------------------------------------------ Arc etc.

Arc::Arc(double t0_, double t1_, int grid_size_) : t0(t0_), t1(t1_), grid_size(grid_size_) {
  if (!(0.0 <= t0 && t0 < t1 && t1 < t0 + 1.0))
    throw std::invalid_argument("Arc: need 0 <= t0 < t1 < t0 + 1");
  if (grid_size < 2) throw std::invalid_argument("Arc: grid_size must be >= 2");
}

SampledFunction::SampledFunction(Arc arc_, std::vector<std::complex<double>> values_)
    : arc(arc_), values(std::move(values_)) {
  if (static_cast<int>(values.size()) != arc.grid_size)
    throw std::invalid_argument("SampledFunction: values do not match the arc grid");
}

double SampledFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

SampledFunction restrict_to_arc(const TrigPoly& g, const Arc& X) {
  std::vector<std::complex<double>> vals;
  vals.reserve(static_cast<size_t>(X.grid_size));
  for (int j = 0; j < X.grid_size; ++j) vals.push_back(g.eval(X.point(j)));
  return SampledFunction(X, std::move(vals));
}

int arc_independence_rank(const Arc& X, int degree_lo, int degree_hi, double tol) {
  if (degree_lo > degree_hi) throw std::invalid_argument("arc_independence_rank: empty range");
  const int count = degree_hi - degree_lo + 1;
  if (X.grid_size < 2 * count)
    throw std::invalid_argument("arc_independence_rank: grid must have >= 2x the degree count");
  Eigen::MatrixXcd s(X.grid_size, count);
  const double scale = 1.0 / std::sqrt(static_cast<double>(X.grid_size));
  for (int j = 0; j < X.grid_size; ++j) {
    const double t = X.point(j);
    for (int c = 0; c < count; ++c)
      s(j, c) = scale * std::polar(1.0, kTwoPi * (degree_lo + c) * t);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

// --------------------------------------------------------------- extensions

ExtensionResult extend(const SampledFunction& f, GapBridge method, int band, int fine_grid) {
  if (band < 1) throw std::invalid_argument("extend: band must be >= 1");
  if (fine_grid <= 2 * band)
    throw std::invalid_argument("extend: fine grid must exceed twice the band");
  const Arc& X = f.arc;
  const int MX = X.grid_size;
  const double h = (X.t1 - X.t0) / (MX - 1);
  const double gap = X.gap_length();

  // one-sided derivative estimates at the arc ends
  const std::complex<double> d_left = (f.values[static_cast<size_t>(MX - 1)] - f.values[static_cast<size_t>(MX - 2)]) / h;
  const std::complex<double> d_right = (f.values[1] - f.values[0]) / h;
  const std::complex<double> f_end = f.values[static_cast<size_t>(MX - 1)];
  const std::complex<double> f_start = f.values[0];

  std::vector<std::complex<double>> fine(static_cast<size_t>(fine_grid));
  for (int i = 0; i < fine_grid; ++i) {
    const double tt = static_cast<double>(i) / fine_grid;
    double u = std::fmod(tt - X.t0, 1.0);
    if (u < 0.0) u += 1.0;
    u += X.t0;
    if (u <= X.t1 + 1e-15) {
      // linear interpolation between arc grid points
      const double x = (u - X.t0) / h;
      const int j = std::min(static_cast<int>(std::floor(x)), MX - 2);
      const double lam = x - j;
      fine[static_cast<size_t>(i)] =
          (1.0 - lam) * f.values[static_cast<size_t>(j)] + lam * f.values[static_cast<size_t>(j + 1)];
    } else {
      const double s = (u - X.t1) / gap;
      if (method == GapBridge::linear_gap) {
        fine[static_cast<size_t>(i)] = (1.0 - s) * f_end + s * f_start;
      } else {
        // raised-cosine blend of the one-sided linear extrapolations;
        // endpoint values and derivatives match the arc data
        const std::complex<double> from_left = f_end + d_left * (u - X.t1);
        const std::complex<double> from_right = f_start + d_right * (u - (X.t0 + 1.0));
        const double w = 0.5 * (1.0 - std::cos(std::numbers::pi * s));
        fine[static_cast<size_t>(i)] = (1.0 - w) * from_left + w * from_right;
      }
    }
  }

  // DFT truncation to the band
  const auto roots = unit_roots(fine_grid);
  std::vector<std::complex<double>> coeffs(static_cast<size_t>(2 * band + 1));
  for (int n = -band; n <= band; ++n) {
    KahanSum acc;
    for (int j = 0; j < fine_grid; ++j) {
      const long idx = (static_cast<long>(n) * j) % fine_grid;
      acc.add(fine[static_cast<size_t>(j)] *
              std::conj(roots[static_cast<size_t>(idx < 0 ? idx + fine_grid : idx)]));
    }
    coeffs[static_cast<size_t>(n + band)] = acc.sum / static_cast<double>(fine_grid);
  }

  ExtensionResult result{TrigPoly(band, std::move(coeffs)), 0.0};
  const SampledFunction back = restrict_to_arc(result.poly, X);
  for (int j = 0; j < MX; ++j)
    result.extension_error = std::max(
        result.extension_error, std::abs(back.values[static_cast<size_t>(j)] - f.values[static_cast<size_t>(j)]));
  return result;
}

// --------------------------------------- zero-component norm lower bound

namespace {

Eigen::MatrixXcd arc_sampling_matrix(const Arc& X, int band, int points) {
  Eigen::MatrixXcd e(points, 2 * band + 1);
  for (int j = 0; j < points; ++j) {
    const double t = X.t0 + (X.t1 - X.t0) * static_cast<double>(j) / (points - 1);
    for (int n = -band; n <= band; ++n)
      e(j, n + band) = std::polar(1.0, kTwoPi * n * t);
  }
  return e;
}

double max_modulus(const Eigen::VectorXcd& p, Eigen::Index* argmax = nullptr) {
  double best = -1.0;
  Eigen::Index at = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double m = std::abs(p(i));
    if (m > best) {
      best = m;
      at = i;
    }
  }
  if (argmax) *argmax = at;
  return best;
}

}  // namespace

LowerBoundResult zero_component_norm_lower_bound(const Arc& X, int band, int iters) {
  if (band < 1) throw std::invalid_argument("lower bound: band must be >= 1");
  if (iters < 0) throw std::invalid_argument("lower bound: iters must be >= 0");
  const int B = band;
  // the solver grid oversamples the band so grid maxima track the sup norm
  const int points = std::max(X.grid_size, 32 * B);
  const Eigen::MatrixXcd e = arc_sampling_matrix(X, B, points);

  // starting candidates: Fejer kernel translated to the gap center, and the
  // constant polynomial (both feasible, c_0 = 1)
  const double gap_center = (X.t1 + (X.t0 + 1.0)) / 2.0;
  Eigen::VectorXcd fejer_start(2 * B + 1);
  for (int n = -B; n <= B; ++n)
    fejer_start(n + B) = (1.0 - std::abs(n) / static_cast<double>(B + 1)) *
                         std::polar(1.0, -kTwoPi * n * gap_center);
  Eigen::VectorXcd constant = Eigen::VectorXcd::Zero(2 * B + 1);
  constant(B) = 1.0;

  Eigen::VectorXcd best_c = fejer_start;
  double best_v = max_modulus(e * fejer_start);
  {
    const double vc = max_modulus(e * constant);
    if (vc < best_v) {
      best_v = vc;
      best_c = constant;
    }
  }
  const double start_v = best_v;

  Eigen::VectorXcd c = best_c;
  for (int it = 1; it <= iters; ++it) {
    Eigen::Index j = 0;
    const Eigen::VectorXcd p = e * c;
    const double v = max_modulus(p, &j);
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
    // subgradient of the max-modulus at the active grid point
    Eigen::VectorXcd g = (p(j) / std::abs(p(j))) * e.row(j).conjugate().transpose();
    g(B) = {0.0, 0.0};  // projection: c_0 stays 1
    const double gn = std::max(g.norm(), 1e-30);
    const double eta = 0.5 * best_v / std::sqrt(static_cast<double>(it));
    c -= (eta / gn) * g;
    c(B) = {1.0, 0.0};
  }
  {
    const Eigen::VectorXcd p = e * c;
    const double v = max_modulus(p);
    if (v < best_v) {
      best_v = v;
      best_c = c;
    }
  }

  // conservative certificate: evaluate the winner on a 4x refined grid
  const Eigen::MatrixXcd e4 = arc_sampling_matrix(X, B, 4 * points);
  const double v4 = max_modulus(e4 * best_c);
  LowerBoundResult result;
  result.minimax_value = v4;
  result.solver_value = best_v;
  result.bound = 1.0 / v4;
  result.improved = best_v < start_v;
  return result;
}

// ------------------------------------------------------ engine adapters

CircleSamplesGraded::CircleSamplesGraded(UniformSamples f_, int band_)
    : f(std::move(f_)), band(band_) {
  if (band < 0) throw std::invalid_argument("CircleSamplesGraded: band must be >= 0");
  if (2 * band >= f.size())
    throw std::invalid_argument("CircleSamplesGraded: band must stay below M/2");
  coeffs.reserve(static_cast<size_t>(2 * band + 1));
  for (int n = -band; n <= band; ++n) coeffs.push_back(fourier_coefficient(f, n));
}

UniformSamples CircleSamplesGraded::component(const MultiIndex& m) const {
  const int n = m[0];
  const int M = f.size();
  UniformSamples out;
  out.values.assign(static_cast<size_t>(M), {0.0, 0.0});
  if (std::abs(n) > band) return out;
  const std::complex<double> cn = coeffs[static_cast<size_t>(n + band)];
  const auto roots = unit_roots(M);
  for (int j = 0; j < M; ++j) {
    const long idx = (static_cast<long>(n) * j) % M;
    out.values[static_cast<size_t>(j)] = cn * roots[static_cast<size_t>(idx < 0 ? idx + M : idx)];
  }
  return out;
}

UniformSamples CircleSamplesGraded::add(const UniformSamples& a, const UniformSamples& b) const {
  UniformSamples out = a;
  for (size_t j = 0; j < out.values.size(); ++j) out.values[j] += b.values[j];
  return out;
}

UniformSamples CircleSamplesGraded::scale(double s, const UniformSamples& a) const {
  UniformSamples out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

}  // namespace gradekit
