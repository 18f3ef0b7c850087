#include "gradekit/multi_index.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gradekit {

bool MultiIndex::is_zero() const {
  for (int c : coords)
    if (c != 0) return false;
  return true;
}

bool MultiIndex::nonnegative() const {
  for (int c : coords)
    if (c < 0) return false;
  return true;
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  require_same_rank(*this, other);
  return (other - *this).nonnegative();
}

int MultiIndex::abs_sum() const {
  int s = 0;
  for (int c : coords) s += std::abs(c);
  return s;
}

int MultiIndex::abs_max() const {
  int m = 0;
  for (int c : coords) m = std::max(m, std::abs(c));
  return m;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  require_same_rank(*this, o);
  std::vector<int> c(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) c[j] = coords[j] + o.coords[j];
  return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  require_same_rank(*this, o);
  std::vector<int> c(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) c[j] = coords[j] - o.coords[j];
  return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::operator-() const {
  std::vector<int> c(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) c[j] = -coords[j];
  return MultiIndex(std::move(c));
}

bool MultiIndex::operator<(const MultiIndex& o) const {
  if (coords.size() != o.coords.size()) return coords.size() < o.coords.size();
  return coords < o.coords;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t j = 0; j < coords.size(); ++j) {
    if (j) os << ',';
    os << coords[j];
  }
  os << ')';
  return os.str();
}

void require_same_rank(const MultiIndex& a, const MultiIndex& b) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("rank mismatch: " + a.str() + " vs " + b.str());
}

void for_each_in_box(const MultiIndex& lo, const MultiIndex& hi,
                     const std::function<void(const MultiIndex&)>& fn) {
  require_same_rank(lo, hi);
  const int k = lo.rank();
  for (int j = 0; j < k; ++j)
    if (lo[j] > hi[j]) return;
  MultiIndex cur = lo;
  while (true) {
    fn(cur);
    int j = k - 1;
    while (j >= 0) {
      if (cur.coords[static_cast<size_t>(j)] < hi[j]) {
        ++cur.coords[static_cast<size_t>(j)];
        break;
      }
      cur.coords[static_cast<size_t>(j)] = lo[j];
      --j;
    }
    if (j < 0) return;
  }
}

std::complex<double> unit_ipow(std::complex<double> z, int n) {
  if (n < 0) {
    z = std::conj(z);
    n = -n;
  }
  std::complex<double> r{1.0, 0.0};
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

TorusPoint::TorusPoint(std::vector<std::complex<double>> z) : coords(std::move(z)) {
  for (const auto& c : coords) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12)
      throw std::invalid_argument("torus point coordinate is not unimodular");
  }
}

TorusPoint TorusPoint::one(int rank) {
  return TorusPoint(std::vector<std::complex<double>>(static_cast<size_t>(rank), {1.0, 0.0}));
}

TorusPoint TorusPoint::from_angles(const std::vector<double>& turns) {
  std::vector<std::complex<double>> z;
  z.reserve(turns.size());
  for (double t : turns) z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t));
  return TorusPoint(std::move(z));
}

std::complex<double> TorusPoint::character(const MultiIndex& n) const {
  if (n.rank() != rank())
    throw std::invalid_argument("character: rank mismatch");
  std::complex<double> r{1.0, 0.0};
  for (int j = 0; j < rank(); ++j) r *= unit_ipow(coords[static_cast<size_t>(j)], n[j]);
  return r;
}

TorusPoint TorusPoint::operator*(const TorusPoint& o) const {
  if (rank() != o.rank()) throw std::invalid_argument("torus point rank mismatch");
  std::vector<std::complex<double>> z(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) z[j] = coords[j] * o.coords[j];
  return TorusPoint(std::move(z));
}

TorusPoint TorusPoint::conjugated() const {
  std::vector<std::complex<double>> z(coords.size());
  for (size_t j = 0; j < coords.size(); ++j) z[j] = std::conj(coords[j]);
  return TorusPoint(std::move(z));
}

double TorusPoint::distance(const TorusPoint& o) const {
  if (rank() != o.rank()) throw std::invalid_argument("torus point rank mismatch");
  double d = 0.0;
  for (size_t j = 0; j < coords.size(); ++j) d = std::max(d, std::abs(coords[j] - o.coords[j]));
  return d;
}

}  // namespace gradekit
