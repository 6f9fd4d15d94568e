#include "oscillax/fio.hpp"

#include <algorithm>
#include <cmath>

#include "oscillax/parallel.hpp"

namespace oscillax {

namespace {

// Max |Fu| over the outermost index shell, relative to the global peak.
double boundary_mass(const GridFunction& fu) {
  const int N = fu.points_per_axis;
  double peak = 0.0, edge = 0.0;
  for (std::size_t flat = 0; flat < fu.values.size(); ++flat) {
    const double m = std::abs(fu.values[flat]);
    peak = std::max(peak, m);
    std::size_t rem = flat;
    bool on_edge = false;
    for (int d = 0; d < fu.dim; ++d) {
      const int j = static_cast<int>(rem % N);
      rem /= N;
      if (j == 0 || j == N - 1) on_edge = true;
    }
    if (on_edge) edge = std::max(edge, m);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace

std::vector<cplx> apply_fio_direct(const SymbolEvaluator& a, const PhasePair& phase,
                                   const GridFunction& u, ThetaQuadrature tq,
                                   const PointSet& xs, int threads) {
  if (xs.dim != u.dim) throw std::domain_error("apply_fio_direct: dimension mismatch");
  const GridFunction fu = fourier_transform(u, tq.pad_factor);
  const double mass = boundary_mass(fu);
  if (mass > tq.boundary_decay)
    throw ResolutionError(
        "apply_fio_direct: Fu boundary mass " + std::to_string(mass) +
        " exceeds " + std::to_string(tq.boundary_decay) +
        "; enlarge the grid extent");

  const int N = fu.points_per_axis;
  const double dth = fu.step();
  double cell = 1.0;
  for (int d = 0; d < u.dim; ++d) cell *= dth;

  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t xi) {
    const auto x = xs[xi];
    std::vector<double> th(u.dim);
    std::vector<double> re_parts(fu.values.size()), im_parts(fu.values.size());
    const double phi_x = phase.phi(x);
    for (std::size_t flat = 0; flat < fu.values.size(); ++flat) {
      std::size_t rem = flat;
      for (int d = u.dim - 1; d >= 0; --d) {
        th[d] = fu.coord(static_cast<int>(rem % N));
        rem /= N;
      }
      const double ang = phi_x * phase.psi(th);
      const cplx osc{std::cos(ang), std::sin(ang)};
      const cplx v = osc * a(x, th) * fu.values[flat];
      re_parts[flat] = v.real();
      im_parts[flat] = v.imag();
    }
    out[xi] = cell * cplx{pairwise_sum(re_parts), pairwise_sum(im_parts)};
  }, threads);
  return out;
}

std::vector<cplx> apply_fio_direct(const CounterexampleSymbol& sym,
                                   const GridFunction& u, ThetaQuadrature tq,
                                   const PointSet& xs, int threads) {
  return apply_fio_direct(sym.evaluator(), sym.phase, u, tq, xs, threads);
}

namespace {

cplx reduced_core(const std::function<cplx(std::span<const double>)>& u,
                  const RadialScale& g, const CutoffK& cutoff,
                  const SmoothBump* spatial_cutoff, std::span<const double> x) {
  const int dim = g.dim;
  if (static_cast<int>(x.size()) != dim)
    throw std::domain_error("apply_reduced: point dimension mismatch");
  for (double xi : x)
    if (!(xi > 0.0 && xi < g.beta))
      throw std::domain_error("apply_reduced: x must lie in (0, beta)^n");
  const double gx = g(x);
  if (!(gx > 0.0)) throw std::domain_error("apply_reduced: g(x) = 0");

  const int G = cutoff.grid_size;
  const double h = cutoff.h_z;
  double spatial = 1.0;
  if (spatial_cutoff)
    for (double xi : x) spatial *= spatial_cutoff->eval(xi);

  std::vector<double> y(dim);
  auto node = [&](int k) { return -cutoff.z_max + k * h; };
  auto wt = [&](int k) { return (k == 0 || k == G) ? 0.5 : 1.0; };

  cplx acc{0.0, 0.0};
  if (dim == 1) {
    std::vector<double> re(G + 1), im(G + 1);
    for (int k = 0; k <= G; ++k) {
      y[0] = gx * node(k);
      const cplx v = wt(k) * cutoff.ft[k] * u(y);
      re[k] = v.real();
      im[k] = v.imag();
    }
    acc = cplx{pairwise_sum(re), pairwise_sum(im)} * h;
  } else if (dim == 2) {
    std::vector<double> row_re(G + 1), row_im(G + 1);
    std::vector<double> col_re(G + 1), col_im(G + 1);
    for (int k1 = 0; k1 <= G; ++k1) {
      y[0] = gx * node(k1);
      for (int k2 = 0; k2 <= G; ++k2) {
        y[1] = gx * node(k2);
        const cplx v = wt(k2) * cutoff.ft[k2] * u(y);
        col_re[k2] = v.real();
        col_im[k2] = v.imag();
      }
      const cplx rowsum{pairwise_sum(col_re), pairwise_sum(col_im)};
      const cplx v = wt(k1) * cutoff.ft[k1] * rowsum;
      row_re[k1] = v.real();
      row_im[k1] = v.imag();
    }
    acc = cplx{pairwise_sum(row_re), pairwise_sum(row_im)} * h * h;
  } else {
    throw std::domain_error("apply_reduced: dim must be 1 or 2");
  }
  return spatial * acc;
}

}  // namespace

cplx apply_reduced(const std::function<cplx(std::span<const double>)>& u,
                   const RadialScale& g, const CutoffK& cutoff,
                   const SmoothBump* spatial_cutoff, std::span<const double> x,
                   ReducedDiag* diag) {
  if (diag) *diag = ReducedDiag{};
  return reduced_core(u, g, cutoff, spatial_cutoff, x);
}

cplx apply_reduced(const GridFunction& u, const RadialScale& g, const CutoffK& cutoff,
                   const SmoothBump* spatial_cutoff, std::span<const double> x,
                   ReducedDiag* diag) {
  double outside = 0.0;
  auto eval = [&u, &outside](std::span<const double> y) {
    return interp_cubic(u, y, &outside);
  };
  const cplx v = reduced_core(eval, g, cutoff, spatial_cutoff, x);
  if (diag) {
    diag->truncation = outside;
    diag->clamped = false;
  }
  return v;
}

cplx apply_to_box(double eps, double g_at_x, const CutoffK& cutoff, int dim,
                  bool* clamped) {
  if (!(eps > 0.0)) throw std::domain_error("apply_to_box: eps must be > 0");
  if (!(g_at_x > 0.0)) throw std::domain_error("apply_to_box: g must be > 0");
  const double v = cutoff.cumint_at(eps / g_at_x, clamped);
  return cplx{std::pow(kTwoPi, -0.5 * dim) * std::pow(v, dim), 0.0};
}

double find_inversion_threshold(const CutoffK& cutoff, double beta, int dim) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("find_inversion_threshold: beta must be in (0,1)");
  if (dim < 1) throw std::domain_error("find_inversion_threshold: dim must be >= 1");
  const double thr = std::pow(beta, 1.0 / dim);
  const auto& c = cutoff.cumint;
  int first_ok = -1;
  for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) {
    const double v = std::abs(c[m] / kSqrtTwoPi);
    if (v >= thr) first_ok = m;
    else break;
  }
  if (first_ok < 0 || first_ok == static_cast<int>(c.size()) - 1)
    throw ResolutionError(
        "find_inversion_threshold: cumint table too short to stabilize above beta=" +
        std::to_string(beta));
  return first_ok * cutoff.h_z;
}

}  // namespace oscillax
