#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "oscillax/mollifier.hpp"

namespace oscillax {

/// One flat defaults/override table driving every command. All numeric
/// fields must satisfy the ranges the downstream modules declare; they are
/// validated on use, not here.
struct RunConfig {
  std::string command;
  int dim = 1;
  double beta = 0.9;
  double delta_plateau = 0.5;
  std::string mollifier = "fast-path-log";  // | diagonal-envelope | linear | constant
  std::vector<int> p_list{1, 2, 4, 8};
  int grid_points = 0;  // 0: pick by dimension (2^14 for n=1, 2^10 for n=2)
  double extent = 64.0;
  double z_max = 128.0;
  int ft_grid_size = 4096;
  int box_quad_points = 256;
  int theta_decade_lo = 0, theta_decade_hi = 16, theta_per_decade = 4;
  int x_octaves = 20, x_per_octave = 8;
  bool full_domain_norm = false;
  std::string out = "oscillax-out";
  std::uint64_t seed = 12345;
  int threads = 0;

  static constexpr const char* kDefaultsVersion = "1";

  int resolved_grid_points() const {
    if (grid_points > 0) return grid_points;
    return dim == 1 ? (1 << 14) : (1 << 10);
  }
};

/// Echo of the full table (including the defaults version), embedded in
/// every report for reproducibility.
nlohmann::json config_echo(const RunConfig& cfg);

/// Flat key = value config document: one pair per line, '#' comments,
/// p_list as a comma list. Unknown keys are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Maps the mollifier selection name to a constructed mollifier.
Mollifier build_mollifier(const std::string& name);

}  // namespace oscillax
