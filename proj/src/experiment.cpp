#include "oscillax/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "oscillax/parallel.hpp"

namespace oscillax {

double choose_epsilon(int p, double n0, double beta, const RadialScale& g, int dim) {
  if (p < 1) throw std::domain_error("choose_epsilon: p must be >= 1");
  if (!(n0 > 0.0)) throw std::domain_error("choose_epsilon: n0 must be > 0");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::domain_error("choose_epsilon: beta must be in (0,1)");

  auto feasible = [&](double eps) {
    const double gd = g.diagonal(p * eps);
    return gd > 0.0 && eps / gd >= n0;
  };

  const double cap = beta / p;
  if (feasible(cap)) return cap;

  double lo = 1e-300;
  if (!feasible(lo))
    throw std::runtime_error(
        "choose_epsilon: no feasible epsilon in (0, beta/p] at machine precision "
        "for p=" + std::to_string(p) + ", N0=" + std::to_string(n0) +
        "; the mollifier does not vanish fast enough near 0 for this threshold");

  double hi = cap;
  for (int it = 0; it < 300 && (hi - lo) > 1e-13 * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

namespace {

// Restricted-domain estimate of ||A u_eps||^2: tensor trapezoid of
// |apply_to_box(eps, g(x))|^2 over x in (0, p eps]^n. The x = 0 corner is the
// full-line inversion limit (g -> 0 clamps the cumulative table).
double restricted_norm_sq(double eps, int p, const RadialScale& g,
                          const CutoffK& cutoff, int dim, int panels) {
  const double side = p * eps;
  const double h = side / panels;

  auto box_val = [&](std::span<const double> x) {
    const double gx = g(x);
    double v;
    if (gx > 0.0) {
      v = std::abs(apply_to_box(eps, gx, cutoff, dim).real());
    } else {
      v = std::pow(kTwoPi, -0.5 * dim) * std::pow(cutoff.cumint.back(), dim);
    }
    return v * v;
  };

  if (dim == 1) {
    std::vector<double> parts(panels + 1);
    for (int i = 0; i <= panels; ++i) {
      const double x = i * h;
      const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
      parts[i] = w * box_val(std::span<const double>(&x, 1));
    }
    return h * pairwise_sum(parts);
  }
  // dim == 2
  std::vector<double> rows(panels + 1);
  std::vector<double> cols(panels + 1);
  for (int i = 0; i <= panels; ++i) {
    const double wi = (i == 0 || i == panels) ? 0.5 : 1.0;
    for (int j = 0; j <= panels; ++j) {
      const double wj = (j == 0 || j == panels) ? 0.5 : 1.0;
      const double xy[2] = {i * h, j * h};
      cols[j] = wj * box_val(std::span<const double>(xy, 2));
    }
    rows[i] = wi * pairwise_sum(cols);
  }
  return h * h * pairwise_sum(rows);
}

// Optional cross-check: the same integrand over all of (0, beta)^n on a
// log-spaced grid glued to the restricted box.
double full_domain_norm_sq(double eps, int p, const RadialScale& g,
                           const CutoffK& cutoff, int dim, int panels,
                           double beta) {
  double total = restricted_norm_sq(eps, p, g, cutoff, dim, panels);
  const double lo = p * eps;
  if (lo >= beta || dim != 1) return total;  // log tail implemented for n=1
  const int segs = 24 * 16;
  const double ratio = std::log(beta / lo) / segs;
  std::vector<double> parts(segs);
  double a = lo;
  for (int i = 0; i < segs; ++i) {
    const double b = lo * std::exp((i + 1) * ratio);
    const double xm = 0.5 * (a + b);
    const double gx = g.diagonal(xm);  // dim==1: g at the point xm
    const double v = std::abs(apply_to_box(eps, gx, cutoff, dim).real());
    parts[i] = v * v * (b - a);
    a = b;
  }
  return total + pairwise_sum(parts);
}

}  // namespace

BlowupReport run_blowup(const BlowupConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.p_list.empty())
    throw std::domain_error("run_blowup: p_list must not be empty");
  for (std::size_t i = 1; i < config.p_list.size(); ++i)
    if (config.p_list[i] <= config.p_list[i - 1])
      throw std::domain_error("run_blowup: p_list must be strictly increasing");

  const RadialScale g{config.mollifier, config.beta, config.dim};
  const double n0 = find_inversion_threshold(config.cutoff, config.beta, config.dim);

  BlowupReport rep;
  rep.n0_used = n0;
  rep.config_echo = config.config_echo;
  rep.rows.resize(config.p_list.size());

  std::optional<std::string> row_error;
  std::mutex err_mutex;
  parallel_for(config.p_list.size(), [&](std::size_t i) {
    const int p = config.p_list[i];
    try {
      const double eps = choose_epsilon(p, n0, config.beta, g, config.dim);
      const double norm_sq = restricted_norm_sq(eps, p, g, config.cutoff,
                                                config.dim, config.box_quad_points);
      const double u_norm = std::pow(kTwoPi, -0.5 * config.dim) *
                            std::pow(2.0 * eps, 0.5 * config.dim);
      BlowupRow row;
      row.p = p;
      row.epsilon_p = eps;
      row.ratio_computed = std::sqrt(norm_sq) / u_norm;
      row.ratio_lower_bound = config.beta * std::pow(kTwoPi, 0.5 * config.dim) *
                              std::pow(0.5 * p, 0.5 * config.dim);
      row.margin = row.ratio_computed / row.ratio_lower_bound - 1.0;
      if (config.full_domain_norm) {
        const double full = full_domain_norm_sq(eps, p, g, config.cutoff, config.dim,
                                                config.box_quad_points, config.beta);
        row.ratio_full_domain = std::sqrt(full) / u_norm;
      }
      rep.rows[i] = row;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!row_error)
        row_error = "run_blowup: row p=" + std::to_string(p) + " failed: " + e.what();
    }
  }, config.threads);
  if (row_error) throw std::runtime_error(*row_error);

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<std::string> validate_report(const BlowupReport& report,
                                         const BlowupConfig& config) {
  std::vector<std::string> bad;
  const RadialScale g{config.mollifier, config.beta, config.dim};
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    if (!(r.ratio_computed >= r.ratio_lower_bound * (1.0 - config.margin_tol)))
      bad.push_back("row p=" + std::to_string(r.p) + ": ratio below lower bound");
    if (i > 0 && !(r.ratio_computed > report.rows[i - 1].ratio_computed))
      bad.push_back("row p=" + std::to_string(r.p) + ": ratio not strictly increasing");
    if (i > 0 && !(r.epsilon_p <= report.rows[i - 1].epsilon_p))
      bad.push_back("row p=" + std::to_string(r.p) + ": epsilon_p increased");
    if (!(r.p * r.epsilon_p <= config.beta * (1.0 + 1e-12)))
      bad.push_back("row p=" + std::to_string(r.p) + ": p*eps exceeds beta");
    const double gd = g.diagonal(r.p * r.epsilon_p);
    if (!(gd > 0.0 && r.epsilon_p / gd >= report.n0_used * (1.0 - 1e-10)))
      bad.push_back("row p=" + std::to_string(r.p) + ": feasibility identity violated");
    if (r.ratio_full_domain &&
        !(*r.ratio_full_domain >= r.ratio_computed * (1.0 - 1e-12)))
      bad.push_back("row p=" + std::to_string(r.p) +
                    ": full-domain norm below restricted estimate");
  }
  return bad;
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void emit_csv(const BlowupReport& report, std::ostream& out) {
  out << "p,epsilon_p,ratio_computed,ratio_lower_bound,margin\n";
  for (const auto& r : report.rows) {
    out << r.p << ',' << fmt12(r.epsilon_p) << ',' << fmt12(r.ratio_computed) << ','
        << fmt12(r.ratio_lower_bound) << ',' << fmt12(r.margin) << '\n';
  }
}

void emit_json(const BlowupReport& report, std::ostream& out) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json jr;
    jr["p"] = r.p;
    jr["epsilon_p"] = r.epsilon_p;
    jr["ratio_computed"] = r.ratio_computed;
    jr["ratio_lower_bound"] = r.ratio_lower_bound;
    jr["margin"] = r.margin;
    if (r.ratio_full_domain) jr["ratio_full_domain"] = *r.ratio_full_domain;
    j["rows"].push_back(jr);
  }
  j["N0_used"] = report.n0_used;
  j["config"] = report.config_echo;
  j["wall_time_s"] = report.wall_time_s;
  out << j.dump(2) << "\n";
}

void emit_report(const BlowupReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  if (format == ReportFormat::csv) emit_csv(report, out);
  else emit_json(report, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

BlowupReport parse_report_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  BlowupReport rep;
  for (const auto& jr : j.at("rows")) {
    BlowupRow r;
    r.p = jr.at("p").get<int>();
    r.epsilon_p = jr.at("epsilon_p").get<double>();
    r.ratio_computed = jr.at("ratio_computed").get<double>();
    r.ratio_lower_bound = jr.at("ratio_lower_bound").get<double>();
    r.margin = jr.at("margin").get<double>();
    if (jr.contains("ratio_full_domain"))
      r.ratio_full_domain = jr.at("ratio_full_domain").get<double>();
    rep.rows.push_back(r);
  }
  rep.n0_used = j.at("N0_used").get<double>();
  if (j.contains("config")) rep.config_echo = j.at("config");
  if (j.contains("wall_time_s")) rep.wall_time_s = j.at("wall_time_s").get<double>();
  return rep;
}

}  // namespace oscillax
