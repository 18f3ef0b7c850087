#pragma once

#include <complex>
#include <cstdint>

#include "gradekit/matrix_core.hpp"
#include "gradekit/multi_index.hpp"

namespace gradekit {

inline constexpr std::uint64_t kDefaultSeed = 0xC57A1;

/// Deterministic PRNG used by all randomized checks and reports.
///
/// Contract: SplitMix64 core — for a given seed, the stream of next() values
/// is identical on every conforming platform. Doubles are derived from the
/// top 53 bits only, so uniform() is platform-independent too.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  std::complex<double> complex_in_square() {
    const double re = uniform(-1.0, 1.0);
    const double im = uniform(-1.0, 1.0);
    return {re, im};
  }

  std::complex<double> unimodular() { return std::polar(1.0, 2.0 * 3.14159265358979323846 * uniform()); }

  CMatrix matrix(int d) {
    CMatrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = complex_in_square();
    return a;
  }

  TorusPoint torus_point(int k) {
    std::vector<double> turns(static_cast<size_t>(k));
    for (auto& t : turns) t = uniform();
    return TorusPoint::from_angles(turns);
  }

  MultiIndex multi_index(int k, int lo, int hi) {
    std::vector<int> c(static_cast<size_t>(k));
    for (auto& x : c) x = uniform_int(lo, hi);
    return MultiIndex(std::move(c));
  }

 private:
  std::uint64_t state_;
};

}  // namespace gradekit
