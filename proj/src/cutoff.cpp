#include "oscillax/cutoff.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace oscillax {

namespace {

double ramp01(double s) {
  // 0 at s<=0, 1 at s>=1, smooth join: e(s) / (e(s) + e(1-s))
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double SmoothBump::eval(double t) const {
  const double a = std::abs(t);
  if (a <= plateau) return 1.0;
  if (a >= 1.0) return 0.0;
  return ramp01((1.0 - a) / (1.0 - plateau));
}

double CutoffK::ft_at(double z) const {
  const double a = std::abs(z);
  if (a >= z_max) return 0.0;
  const double u = (a + z_max) / h_z;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(u), ft.size() - 2);
  const double s = u - static_cast<double>(k);
  return ft[k] * (1.0 - s) + ft[k + 1] * s;
}

double CutoffK::cumint_at(double n_half_width, bool* clamped) const {
  if (clamped) *clamped = false;
  if (!(n_half_width >= 0.0))
    throw std::domain_error("cumint_at: half width must be >= 0");
  const double u = n_half_width / h_z;
  if (u >= static_cast<double>(cumint.size() - 1)) {
    if (clamped) *clamped = true;
    return cumint.back();
  }
  const std::size_t m = static_cast<std::size_t>(u);
  const double s = u - static_cast<double>(m);
  return cumint[m] * (1.0 - s) + cumint[m + 1] * s;
}

CutoffK make_cutoff(double delta_plateau, double z_max, int grid_size) {
  if (!(delta_plateau > 0.0 && delta_plateau < 1.0))
    throw std::domain_error("make_cutoff: delta_plateau must be in (0,1)");
  if (grid_size < (1 << 12) || (grid_size & (grid_size - 1)) != 0)
    throw std::domain_error("make_cutoff: grid_size must be a power of two >= 4096");
  if (!(z_max > 1.0))
    throw std::domain_error("make_cutoff: z_max must exceed 1");

  CutoffK k;
  k.delta_plateau = delta_plateau;
  k.z_max = z_max;
  k.grid_size = grid_size;
  k.h_z = 2.0 * z_max / grid_size;
  k.bump = SmoothBump{delta_plateau};

  // FFT size: fine enough t-sampling (h_t <= 5e-4) on [0, 2pi/h_z).
  int n_fft = 1 << 12;
  while (kTwoPi / (static_cast<double>(n_fft) * k.h_z) > 5e-4) n_fft <<= 1;
  const double h_t = kTwoPi / (static_cast<double>(n_fft) * k.h_z);

  std::vector<double> in(n_fft, 0.0);
  for (int j = 0; j < n_fft; ++j) {
    const double t = j * h_t;
    if (t > 1.0) break;  // K supported in [-1,1]
    in[j] = k.bump.eval(t);
  }
  std::vector<cplx> spec(n_fft / 2 + 1);
  {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      plan = fftw_plan_dft_r2c_1d(n_fft, in.data(),
                                  reinterpret_cast<fftw_complex*>(spec.data()),
                                  FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  // FK(z_m) = (2pi)^{-1/2} * h_t * (2 Re S_m - K(0)), the trapezoid sum of
  // 2 * integral over [0,1] of K(t) cos(t z) dt at z_m = m h_z.
  const int half = grid_size / 2;
  k.ft.assign(grid_size + 1, 0.0);
  const double scale = h_t / kSqrtTwoPi;
  for (int m = 0; m <= half; ++m) {
    const double fk = scale * (2.0 * spec[m].real() - in[0]);
    k.ft[half + m] = fk;
    k.ft[half - m] = fk;
  }

  k.cumint.assign(half + 1, 0.0);
  double acc = 0.0;
  for (int m = 1; m <= half; ++m) {
    acc += 0.5 * k.h_z * (k.ft[half + m - 1] + k.ft[half + m]);
    k.cumint[m] = 2.0 * acc;  // evenness: integral over [-N, N]
  }
  return k;
}

}  // namespace oscillax
