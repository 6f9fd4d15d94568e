#pragma once

#include <vector>

#include "oscillax/common.hpp"

namespace oscillax {

/// Even C-infinity plateau function: 1 on [-plateau, plateau], 0 outside
/// [-1, 1], e^{-1/s} transition ramp in between.
struct SmoothBump {
  double plateau = 0.5;

  double eval(double t) const;
};

/// The 1-D cutoff K with its Fourier-side tables. ft holds
/// FK(z) = (2pi)^{-1/2} integral e^{-itz} K(t) dt (real, even) at
/// z_k = -z_max + k h_z, k = 0..grid_size; cumint holds
/// N -> integral over [-N, N] of FK at the nonnegative nodes N_m = m h_z.
struct CutoffK {
  double delta_plateau = 0.5;
  double z_max = 128.0;
  int grid_size = 4096;
  double h_z = 0.0625;
  SmoothBump bump;
  std::vector<double> ft;      // grid_size + 1 values
  std::vector<double> cumint;  // grid_size/2 + 1 values

  double eval(double t) const { return bump.eval(t); }
  /// Linear interpolation of the ft table; 0 beyond z_max.
  double ft_at(double z) const;
  /// Linear interpolation of the cumint table; clamps to the full-line value
  /// beyond z_max and reports it via `clamped`.
  double cumint_at(double n_half_width, bool* clamped = nullptr) const;
};

/// Builds K and its tables. The transform is computed by an FFT of dense
/// samples of K (trapezoid-exact for this compactly supported smooth K), the
/// cumulative integral by cumulative trapezoid on the z grid.
CutoffK make_cutoff(double delta_plateau, double z_max = 128.0, int grid_size = 4096);

}  // namespace oscillax
