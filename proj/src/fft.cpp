#include "oscillax/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace oscillax {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;  // FFTW planning is not thread safe
  return m;
}

// In-place forward DFT (e^{-2pi i jk/N} kernel) on a dim-dimensional cube.
void dft_forward(std::vector<cplx>& data, int dim, int n) {
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    switch (dim) {
      case 1: plan = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE); break;
      case 2: plan = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE); break;
      default: plan = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE); break;
    }
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

GridFunction fourier_transform(const GridFunction& u, int pad_factor) {
  if (pad_factor < 1 || (pad_factor & (pad_factor - 1)) != 0)
    throw std::domain_error("fourier_transform: pad_factor must be a power of two");
  const int n_in = u.points_per_axis;
  const int N = n_in * pad_factor;
  if (N % 4 != 0)
    throw std::domain_error("fourier_transform: transform size must be divisible by 4");
  const double h = u.step();

  GridFunction out;
  out.dim = u.dim;
  out.points_per_axis = N;
  out.extent = kPi / h;
  std::size_t total = 1;
  for (int d = 0; d < u.dim; ++d) total *= N;
  std::vector<cplx> work(total, cplx{0.0, 0.0});

  // Embed the input samples centered in the padded cube; y_j = -L' + j h
  // with L' = (N/2) h, so the original nodes land at offset (N - n_in)/2.
  const int off = (N - n_in) / 2;
  std::size_t in_total = u.values.size();
  for (std::size_t flat = 0; flat < in_total; ++flat) {
    std::size_t rem = flat, dst = 0;
    int jsum = 0;
    int idx[3] = {0, 0, 0};
    for (int d = u.dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % n_in);
      rem /= n_in;
    }
    for (int d = 0; d < u.dim; ++d) {
      const int j = idx[d] + off;
      dst = dst * N + j;
      jsum += j;
    }
    // pre-twiddle (-1)^(j1+j2+...) recenters the transform
    work[dst] = (jsum & 1) ? -u.values[flat] : u.values[flat];
  }

  dft_forward(work, u.dim, N);

  const double scale = std::pow(kTwoPi, -0.5 * u.dim) * std::pow(h, u.dim);
  out.values.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    int ksum = 0;
    for (int d = 0; d < u.dim; ++d) {
      ksum += static_cast<int>(rem % N);
      rem /= N;
    }
    out.values[flat] = ((ksum & 1) ? -scale : scale) * work[flat];
  }
  return out;
}

}  // namespace oscillax
