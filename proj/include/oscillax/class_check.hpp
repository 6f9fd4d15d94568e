#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oscillax/common.hpp"
#include "oscillax/mollifier.hpp"

namespace oscillax {

using SymbolEvaluator =
    std::function<cplx(std::span<const double>, std::span<const double>)>;

/// Target estimate: |d_x^alpha d_theta^gamma a| <= C lambda^{m - rho|gamma| +
/// delta|alpha|}, lambda = 1 + |theta|. When `weight` is set the bound is the
/// weighted form C lambda^{|alpha|-|gamma|} weight(lambda)^{|gamma|} instead.
struct SymbolClassSpec {
  double m = 0.0;
  double rho = 1.0;
  double delta_class = 0.0;
  std::optional<WeightFunction> weight;
};

struct CheckSettings {
  double fd_x_step = 1e-4;          // absolute x step (auto refined, see below)
  double fd_theta_rel_step = 1e-3;  // step per theta coordinate: rel * lambda
  /// The x step is capped at phase_resolution_factor / lambda(theta) so the
  /// oscillation e^{-i phi psi} stays resolved at every sampled decade.
  double phase_resolution_factor = 0.1;
  double min_x_step = 1e-7;  // below this the FD is round-off noise: error out
  double slope_threshold = 0.1;
  int threads = 0;
};

struct PairResult {
  std::vector<int> alpha, gamma;
  double sup_ratio = 0.0;
  std::vector<double> arg_x, arg_theta;  // grid point attaining the sup
  std::vector<double> decade_sup;        // indexed by floor(log2 |theta|)
  std::vector<std::size_t> decade_count;
  double trend_slope = 0.0;  // log-sup slope per log|theta| over top 2 decades
  bool pass = false;
};

struct CheckReport {
  std::vector<PairResult> entries;
  bool pass = false;
  int max_order = 2;
  CheckSettings settings;
  double theta_min = 0.0, theta_max = 0.0;
  std::size_t x_points = 0, theta_points = 0;
  std::string weight_label;
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Sampled symbol-class membership check: central finite differences of the
/// evaluator for every multi-index pair up to max_order, divided by the
/// spec's weight. A symbol passes when every supremum is finite and shows no
/// growth trend across the top two theta decades.
///
/// Throws ResolutionError when the finite-difference step cannot resolve the
/// requested order at some sampled theta.
CheckReport symbol_class_check(const SymbolEvaluator& a, const SymbolClassSpec& spec,
                               int max_order, const PointSet& x_grid,
                               const PointSet& theta_grid, CheckSettings settings = {});

/// Default sampling grids: |x| log spaced over `octaves` octaves below 1 plus
/// the origin; |theta| log spaced over dyadic decades [2^lo, 2^hi+1).
PointSet make_x_grid(int dim, int octaves = 20, int per_octave = 8);
PointSet make_theta_grid(int dim, int decade_lo = 0, int decade_hi = 16,
                         int per_decade = 4);

}  // namespace oscillax
