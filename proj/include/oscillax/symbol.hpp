#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oscillax/cutoff.hpp"
#include "oscillax/mollifier.hpp"

namespace oscillax {

/// Separable phase S(x, theta) = phi(x) psi(theta): phi smooth with
/// nonvanishing gradient and |phi(x)| <= lip_const |x| for |x| <= 1, psi
/// homogeneous of degree 1 and nonzero away from the origin.
struct PhasePair {
  int dim = 1;
  std::function<double(std::span<const double>)> phi;
  std::function<std::vector<double>(std::span<const double>)> grad_phi;
  std::function<double(std::span<const double>)> psi;
  double lip_const = 1.0;
  /// |theta| is not differentiable at 0 for dim >= 2; checks that involve
  /// x-derivatives of the phase factor stay off the unit theta ball.
  bool psi_smooth_at_origin = false;
};

/// phi(x) = x_1 + ... + x_n, psi(theta) = |theta|; lip_const = sqrt(n).
PhasePair default_phase(int dim);

struct PhaseCheckResult {
  bool lipschitz_ok = true;
  bool gradient_nonzero = true;
  bool homogeneous = true;
  bool psi_nonzero = true;
  bool ok() const { return lipschitz_ok && gradient_nonzero && homogeneous && psi_nonzero; }
};

/// Samples the phase-pair hypotheses: |phi| <= lip|x| on |x| <= 1,
/// grad phi != 0, psi(s theta) = s psi(theta), psi != 0 off the origin.
PhaseCheckResult verify_phase(const PhasePair& p, int samples = 10000,
                              std::uint64_t seed = 12345);

/// a(x, theta) = e^{-i phi(x) psi(theta)} prod_j cut(x_j) K(b(|x|) |x| theta_j)
/// with cut the spatial plateau (1 on [-beta, beta], supported in [-1, 1]).
/// `unit_spatial` replaces cut by 1, the variant estimated on [-1,1]^n alone.
struct CounterexampleSymbol {
  PhasePair phase;
  CutoffK cutoff;
  Mollifier b;
  SmoothBump spatial_cutoff;
  double beta = 0.9;
  int dim = 1;
  bool unit_spatial = false;

  cplx eval(std::span<const double> x, std::span<const double> theta) const;
  std::function<cplx(std::span<const double>, std::span<const double>)> evaluator() const;
};

CounterexampleSymbol make_symbol(PhasePair phase, CutoffK cutoff, Mollifier b,
                                 double beta, int dim, bool unit_spatial = false);

}  // namespace oscillax
