#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oscillax/cutoff.hpp"
#include "oscillax/fio.hpp"
#include "oscillax/mollifier.hpp"

#include "json.hpp"

namespace oscillax {

struct BlowupConfig {
  int dim = 1;
  double beta = 0.9;
  std::vector<int> p_list{1, 2, 4, 8};
  Mollifier mollifier;
  CutoffK cutoff;
  int box_quad_points = 256;   // per-axis panels for the restricted-norm quadrature
  double margin_tol = 0.05;
  bool full_domain_norm = false;
  int threads = 0;
  nlohmann::json config_echo;  // defaults table echo, carried into reports
};

struct BlowupRow {
  int p = 0;
  double epsilon_p = 0.0;
  double ratio_computed = 0.0;
  double ratio_lower_bound = 0.0;
  double margin = 0.0;  // ratio_computed / ratio_lower_bound - 1
  std::optional<double> ratio_full_domain;
};

struct BlowupReport {
  std::vector<BlowupRow> rows;
  double n0_used = 0.0;
  nlohmann::json config_echo;
  double wall_time_s = 0.0;
};

/// Largest eps in (0, beta/p] with eps / g(p eps, ..., p eps) >= n0, found by
/// bisection (the constraint is strictly decreasing in eps for increasing b).
/// Throws std::runtime_error when no eps is feasible at machine precision,
/// with a hint to pick a slower mollifier.
double choose_epsilon(int p, double n0, double beta, const RadialScale& g, int dim);

/// For each p: eps_p, the restricted-domain norm of A u_eps over (0, p eps]^n
/// via the closed box form, the ratio against ||u_eps||, and the theoretical
/// lower bound beta (2pi)^{n/2} (p/2)^{n/2}.
BlowupReport run_blowup(const BlowupConfig& config);

/// Empty when all row invariants hold; otherwise one message per violation.
std::vector<std::string> validate_report(const BlowupReport& report,
                                         const BlowupConfig& config);

enum class ReportFormat { json, csv };

void emit_csv(const BlowupReport& report, std::ostream& out);
void emit_json(const BlowupReport& report, std::ostream& out);
/// Writes the report to `path`; errors carry the path in the message.
void emit_report(const BlowupReport& report, ReportFormat format,
                 const std::string& path);

BlowupReport parse_report_json(const std::string& text);

}  // namespace oscillax
