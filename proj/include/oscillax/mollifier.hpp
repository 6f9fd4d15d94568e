#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscillax/common.hpp"

namespace oscillax {

/// A positive weight on [1, inf) that grows without bound (slowly is fine).
struct WeightFunction {
  std::function<double(double)> eval;
  std::string label;
};

/// The target function a mollifier must dominate: continuous on [0,1],
/// zero at 0, positive on (0,1]. `smooth_fast_path` asserts the function is
/// already smooth, nondecreasing and satisfies the t^-n derivative bounds,
/// which lets smooth_mollifier skip the envelope construction.
struct SeedFunction {
  std::function<double(double)> eval;
  std::string label;
  bool smooth_fast_path = false;
};

/// Slowly vanishing mollifier: b(0) = 0, b strictly increasing, smooth away
/// from 0 with |b^(n)(t)| <= C_n t^-n. Evaluable for all t >= 0; the bound
/// constants are certified on (0,1].
struct Mollifier {
  std::function<double(double)> eval;
  std::string label;
  std::string source_seed;
  std::vector<double> derivative_bound_constants;  // C_1, C_2
};

/// g(x) = b(|x|) |x|, the radial scale entering the cutoff arguments.
struct RadialScale {
  Mollifier b;
  double beta = 0.9;
  int dim = 1;

  double operator()(std::span<const double> x) const {
    const double r = euclid_norm(x);
    return b.eval(r) * r;
  }
  /// g at the diagonal point (c, ..., c), c > 0.
  double diagonal(double c) const {
    const double r = c * std::sqrt(static_cast<double>(dim));
    return b.eval(r) * r;
  }
};

/// log applied l times to (C_l + t), where C_l is the l-fold exponential
/// tower exp(...exp(1)); every intermediate log argument stays >= 1 and
/// iterated_log(l, 0) == 1 exactly. Throws std::domain_error for l < 1 or
/// when the tower overflows the floating type (l >= 4 in double).
double iterated_log(int l, double t);

WeightFunction make_iterated_log_weight(int l);
std::vector<WeightFunction> make_iterated_log_family(int max_l = 3);

/// b0(t) = min over l of max(b_l(t), l). Dominated by every family member
/// once that member exceeds its own index, still positive and unbounded.
WeightFunction diagonal_envelope(const std::vector<WeightFunction>& family);

/// f0(t) = 1 / b0(1/t) on (0,1], f0(0) = 0.
SeedFunction weight_to_seed(const WeightFunction& b0);

/// Seed 1/iterated_log(l, 1/t); smooth and nondecreasing, so eligible for
/// the smoothing fast path.
SeedFunction iterated_log_seed(int l);

SeedFunction linear_seed();

/// Builds a mollifier dominating the seed.
///
/// Fast path (seed.smooth_fast_path): b = f0 + eta*t with eta = sup f0.
/// Generic path: dyadic step envelope s(t) = M_k on [2^-k-1, 2^-k) with
/// M_k = sup f0 over [0, 2^-k+1], smoothed by the scale-invariant average
/// b~(t) = integral of s(t*tau) chi(tau) dtau over a unit-mass bump chi
/// supported in [1,2], then b = b~ + eta*t. The average leaves every
/// derivative bounded by C_n t^-n and the linear term makes b strictly
/// increasing. Derivative-bound constants C_1, C_2 are measured by central
/// finite differences with relative step t*1e-4 and stored with margin.
Mollifier smooth_mollifier(const SeedFunction& seed);

/// b(t) = t. Valid mollifier with exact constants; also the control whose
/// too-fast decay breaks the weighted symbol-class estimates.
Mollifier linear_mollifier();

/// b == c > 0. Deliberately inadmissible (b(0) != 0); used to exercise the
/// degenerate branches of epsilon selection.
Mollifier constant_mollifier(double c);

/// JSON record (label, grid samples, constants) for report reproducibility.
std::string mollifier_to_json(const Mollifier& b, int samples = 33);

}  // namespace oscillax
