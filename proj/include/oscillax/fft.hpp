#pragma once

#include "oscillax/grid.hpp"

namespace oscillax {

/// Unitary Fourier transform Fu(theta) = (2pi)^{-n/2} integral e^{-iy.theta}
/// u(y) dy, realized by an FFT with the phase and scale factors that make
/// Parseval exact on the grid: ||Fu|| == ||u|| up to round-off.
///
/// Output grid: extent pi/h, spacing 2pi/(N h) where h is the input step and
/// N the (optionally zero-padded) transform size. pad_factor > 1 refines the
/// theta spacing without changing the input samples.
GridFunction fourier_transform(const GridFunction& u, int pad_factor = 1);

}  // namespace oscillax
