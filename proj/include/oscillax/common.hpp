#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscillax {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const double kSqrtTwoPi = std::sqrt(kTwoPi);

/// Raised when a grid, table or step size cannot resolve the requested
/// quantity. Distinct from std::domain_error (bad arguments) so callers can
/// react by refining instead of rejecting.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double sq(double x) { return x * x; }

inline double euclid_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Deterministic pairwise summation: the result depends only on the order of
/// the input slots, never on thread scheduling.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

/// A flat list of n-dimensional points.
struct PointSet {
  int dim = 1;
  std::vector<double> flat;  // size() * dim coordinates

  std::size_t size() const { return dim == 0 ? 0 : flat.size() / dim; }
  std::span<const double> operator[](std::size_t i) const {
    return std::span<const double>(flat.data() + i * dim, dim);
  }
  void push_back(std::span<const double> p) {
    flat.insert(flat.end(), p.begin(), p.end());
  }
};

}  // namespace oscillax
