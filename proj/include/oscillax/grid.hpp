#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "oscillax/common.hpp"

namespace oscillax {

/// Complex samples on the uniform tensor grid y_j = -L + j h, h = 2L/N,
/// j = 0..N-1 per axis (periodic convention, no +L node). Row major.
struct GridFunction {
  int dim = 1;
  double extent = 0.0;       // half width L per axis
  int points_per_axis = 0;   // power of two
  std::vector<cplx> values;

  double step() const { return 2.0 * extent / points_per_axis; }
  double coord(int j) const { return -extent + j * step(); }
  std::size_t total() const { return values.size(); }
};

GridFunction make_grid(int dim, double extent, int points_per_axis,
                       const std::function<cplx(std::span<const double>)>& f);

/// sqrt(cell volume * sum |values|^2), deterministic pairwise reduction.
double l2_norm(const GridFunction& u);

/// Tensor-product 4-point cubic interpolation, zero extension outside the
/// grid. When `outside` is non-null it accumulates the largest |coordinate
/// overshoot| seen, as a truncation diagnostic.
cplx interp_cubic(const GridFunction& u, std::span<const double> y,
                  double* outside = nullptr);

/// u_eps: (2pi)^{-n/2} inside [-eps, eps]^n, 0 outside. Samples exactly on
/// the jump take the midpoint value (factor 1/2 per boundary coordinate), so
/// grid quadratures agree with the cumulative-integral convention.
struct BoxTestFunction {
  double epsilon = 1.0;
  int dim = 1;

  double value(std::span<const double> y) const;
  /// Closed-form L2 norm (2pi)^{-n/2} (2 eps)^{n/2}.
  double l2() const;
};

/// Grid realization with eps snapped to the nearest cell boundary.
GridFunction box_to_grid(const BoxTestFunction& box, double extent,
                         int points_per_axis, double* eps_snapped = nullptr);

/// Flat little-endian binary record: u32 dim, u32 points_per_axis,
/// f64 extent, then row-major complex64 (float32 re, float32 im) values.
/// The JSON sidecar documents the layout.
void write_grid(const GridFunction& u, const std::string& bin_path,
                const std::string& sidecar_path);
GridFunction read_grid(const std::string& bin_path);

}  // namespace oscillax
