#include "oscillax/symbol.hpp"

#include <cmath>
#include <random>

namespace oscillax {

PhasePair default_phase(int dim) {
  if (dim < 1) throw std::domain_error("default_phase: dim must be >= 1");
  PhasePair p;
  p.dim = dim;
  p.phi = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  };
  p.grad_phi = [dim](std::span<const double>) {
    return std::vector<double>(dim, 1.0);
  };
  p.psi = [](std::span<const double> th) { return euclid_norm(th); };
  p.lip_const = std::sqrt(static_cast<double>(dim));
  p.psi_smooth_at_origin = false;  // |theta| has a kink at the origin
  return p;
}

PhaseCheckResult verify_phase(const PhasePair& p, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PhaseCheckResult r;
  std::vector<double> x(p.dim), th(p.dim), th2(p.dim);
  for (int i = 0; i < samples; ++i) {
    for (auto& v : x) v = gauss(rng);
    const double nrm = euclid_norm(x);
    const double target = unif(rng);  // radius in (0, 1]
    if (nrm > 0) {
      for (auto& v : x) v *= target / nrm;
    }
    if (std::abs(p.phi(x)) > p.lip_const * euclid_norm(x) * (1.0 + 1e-12))
      r.lipschitz_ok = false;
    if (euclid_norm(p.grad_phi(x)) == 0.0) r.gradient_nonzero = false;

    for (auto& v : th) v = gauss(rng);
    if (euclid_norm(th) == 0.0) continue;
    const double s = 0.25 + 4.0 * unif(rng);
    for (int d = 0; d < p.dim; ++d) th2[d] = s * th[d];
    const double lhs = p.psi(th2), rhs = s * p.psi(th);
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) r.homogeneous = false;
    if (p.psi(th) == 0.0) r.psi_nonzero = false;
  }
  return r;
}

cplx CounterexampleSymbol::eval(std::span<const double> x,
                                std::span<const double> theta) const {
  const double r = euclid_norm(x);
  const double g = b.eval(r) * r;
  double mod = 1.0;
  for (int d = 0; d < dim; ++d) {
    if (!unit_spatial) {
      mod *= spatial_cutoff.eval(x[d]);
      if (mod == 0.0) return {0.0, 0.0};
    }
    mod *= cutoff.eval(g * theta[d]);
    if (mod == 0.0) return {0.0, 0.0};
  }
  const double angle = -phase.phi(x) * phase.psi(theta);
  return cplx{mod * std::cos(angle), mod * std::sin(angle)};
}

std::function<cplx(std::span<const double>, std::span<const double>)>
CounterexampleSymbol::evaluator() const {
  return [this](std::span<const double> x, std::span<const double> th) {
    return eval(x, th);
  };
}

CounterexampleSymbol make_symbol(PhasePair phase, CutoffK cutoff, Mollifier b,
                                 double beta, int dim, bool unit_spatial) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("make_symbol: beta must be in (0,1)");
  if (phase.dim != dim)
    throw std::domain_error("make_symbol: phase dimension mismatch");
  CounterexampleSymbol s;
  s.phase = std::move(phase);
  s.cutoff = std::move(cutoff);
  s.b = std::move(b);
  s.spatial_cutoff = SmoothBump{beta};
  s.beta = beta;
  s.dim = dim;
  s.unit_spatial = unit_spatial;
  return s;
}

}  // namespace oscillax
