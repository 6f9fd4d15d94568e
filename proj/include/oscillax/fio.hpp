#pragma once

#include <functional>
#include <optional>

#include "oscillax/class_check.hpp"
#include "oscillax/fft.hpp"
#include "oscillax/grid.hpp"
#include "oscillax/symbol.hpp"

namespace oscillax {

/// Quadrature settings for the direct oscillatory integral.
struct ThetaQuadrature {
  int pad_factor = 1;            // refines the theta grid spacing
  double boundary_decay = 1e-12; // required |Fu| falloff at the grid edge
};

/// Direct evaluation of (Fu)(x) = integral e^{i phi(x) psi(theta)} a(x,theta)
/// Fu(theta) dtheta by trapezoid over the FFT theta grid, one value per
/// requested x. Throws ResolutionError when Fu has not decayed below
/// boundary_decay (relative to its peak) at the grid edge.
std::vector<cplx> apply_fio_direct(const SymbolEvaluator& a, const PhasePair& phase,
                                   const GridFunction& u, ThetaQuadrature tq,
                                   const PointSet& xs, int threads = 0);

std::vector<cplx> apply_fio_direct(const CounterexampleSymbol& sym,
                                   const GridFunction& u, ThetaQuadrature tq,
                                   const PointSet& xs, int threads = 0);

struct ReducedDiag {
  double truncation = 0.0;  // largest coordinate overshoot past the u grid
  bool clamped = false;
};

/// Reduced form (Fu)(x) = prod_j cut(x_j) * integral u(g(x) z) prod_j FK(z_j)
/// dz, trapezoid over the cutoff's z grid. x must lie in (0, beta)^n.
cplx apply_reduced(const std::function<cplx(std::span<const double>)>& u,
                   const RadialScale& g, const CutoffK& cutoff,
                   const SmoothBump* spatial_cutoff, std::span<const double> x,
                   ReducedDiag* diag = nullptr);

/// GridFunction input: cubic interpolation, zero extension outside.
cplx apply_reduced(const GridFunction& u, const RadialScale& g, const CutoffK& cutoff,
                   const SmoothBump* spatial_cutoff, std::span<const double> x,
                   ReducedDiag* diag = nullptr);

/// Closed product form for box data: (2pi)^{-n/2} cumint(eps/g)^n. Values of
/// eps/g beyond the table clamp to the full-line limit (flagged).
cplx apply_to_box(double eps, double g_at_x, const CutoffK& cutoff, int dim,
                  bool* clamped = nullptr);

/// Smallest tabulated N such that |(2pi)^{-n/2} cumint(N')^n| >= beta for
/// every tabulated N' >= N. Exists because the product tends to 1 > beta;
/// throws ResolutionError if the table is too short to stabilize.
double find_inversion_threshold(const CutoffK& cutoff, double beta, int dim);

}  // namespace oscillax
