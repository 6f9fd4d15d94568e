#include "oscillax/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "oscillax/experiment.hpp"
#include "oscillax/fio.hpp"

namespace oscillax {

namespace {

namespace fs = std::filesystem;

void ensure_out(const RunConfig& cfg) { fs::create_directories(cfg.out); }

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out) / name).string();
}

CounterexampleSymbol build_full_symbol(const RunConfig& cfg) {
  return make_symbol(default_phase(cfg.dim),
                     make_cutoff(cfg.delta_plateau, cfg.z_max, cfg.ft_grid_size),
                     build_mollifier(cfg.mollifier), cfg.beta, cfg.dim);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace

int cmd_build_symbol(const RunConfig& cfg) {
  try {
    ensure_out(cfg);
    const auto sym = build_full_symbol(cfg);
    const auto phase_check = verify_phase(sym.phase, 10000, cfg.seed);

    nlohmann::json j;
    j["config"] = config_echo(cfg);
    j["phase"] = {{"lip_const", sym.phase.lip_const},
                  {"psi_smooth_at_origin", sym.phase.psi_smooth_at_origin},
                  {"hypotheses_ok", phase_check.ok()}};
    j["mollifier"] = nlohmann::json::parse(mollifier_to_json(sym.b));

    // |a| on a small diagonal (x, theta) grid for plotting.
    const int nx = 33, nth = 33;
    std::vector<double> xs(nx), ths(nth);
    for (int i = 0; i < nx; ++i) xs[i] = -1.0 + 2.0 * i / (nx - 1);
    for (int i = 0; i < nth; ++i)
      ths[i] = std::exp2(-4.0 + 16.0 * i / (nth - 1.0));
    std::vector<std::vector<double>> abs_a(nx, std::vector<double>(nth));
    std::vector<double> x(cfg.dim), th(cfg.dim);
    double max_abs = 0.0;
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < nth; ++k) {
        std::fill(x.begin(), x.end(), xs[i]);
        std::fill(th.begin(), th.end(), ths[k]);
        abs_a[i][k] = std::abs(sym.eval(x, th));
        max_abs = std::max(max_abs, abs_a[i][k]);
      }
    }
    j["x_grid"] = xs;
    j["theta_grid"] = ths;
    j["abs_a"] = abs_a;
    j["max_abs_a"] = max_abs;
    write_text(out_path(cfg, "symbol.json"), j.dump(2));

    bool ok = phase_check.ok() && max_abs <= 1.0 + 1e-12;
    std::fill(x.begin(), x.end(), 0.0);
    for (int k = 0; k < nth; ++k) {
      std::fill(th.begin(), th.end(), ths[k]);
      if (std::abs(std::abs(sym.eval(x, th)) - 1.0) > 1e-12) ok = false;
    }
    std::cout << (ok ? "build-symbol: ok" : "build-symbol: FAILED") << " -> "
              << out_path(cfg, "symbol.json") << "\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "build-symbol: error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_check_class(const RunConfig& cfg) {
  try {
    ensure_out(cfg);
    const auto sym = build_full_symbol(cfg);
    const auto xg = make_x_grid(cfg.dim, cfg.x_octaves, cfg.x_per_octave);
    const auto tg = make_theta_grid(cfg.dim, cfg.theta_decade_lo, cfg.theta_decade_hi,
                                    cfg.theta_per_decade);
    CheckSettings settings;
    settings.threads = cfg.threads;

    bool all_pass = true;
    for (int l = 1; l <= 3; ++l) {
      SymbolClassSpec spec;
      spec.m = 0.0;
      spec.rho = 1.0;
      spec.delta_class = 1.0;
      spec.weight = make_iterated_log_weight(l);
      const auto rep = symbol_class_check(sym.evaluator(), spec, 2, xg, tg, settings);
      write_text(out_path(cfg, "check-l" + std::to_string(l) + ".json"), rep.to_json());
      std::cout << "check-class: weight l=" << l << (rep.pass ? " pass" : " FAIL")
                << "\n";
      all_pass = all_pass && rep.pass;
    }
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "check-class: error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_blowup(const RunConfig& cfg) {
  try {
    ensure_out(cfg);
    BlowupConfig bc;
    bc.dim = cfg.dim;
    bc.beta = cfg.beta;
    bc.p_list = cfg.p_list;
    bc.mollifier = build_mollifier(cfg.mollifier);
    bc.cutoff = make_cutoff(cfg.delta_plateau, cfg.z_max, cfg.ft_grid_size);
    bc.box_quad_points = cfg.box_quad_points;
    bc.full_domain_norm = cfg.full_domain_norm;
    bc.threads = cfg.threads;
    bc.config_echo = config_echo(cfg);

    const auto rep = run_blowup(bc);
    emit_report(rep, ReportFormat::csv, out_path(cfg, "blowup.csv"));
    emit_report(rep, ReportFormat::json, out_path(cfg, "blowup.json"));

    const auto bad = validate_report(rep, bc);
    for (const auto& msg : bad) std::cerr << "blowup: " << msg << "\n";
    for (const auto& r : rep.rows)
      std::cout << "blowup: p=" << r.p << " eps=" << r.epsilon_p
                << " ratio=" << r.ratio_computed << " bound=" << r.ratio_lower_bound
                << " margin=" << r.margin << "\n";
    std::cout << "blowup: N0=" << rep.n0_used << " -> " << out_path(cfg, "blowup.csv")
              << "\n";
    return bad.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "blowup: error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_crosscheck(const RunConfig& cfg) {
  try {
    ensure_out(cfg);
    const auto sym = build_full_symbol(cfg);
    const RadialScale g{sym.b, cfg.beta, cfg.dim};
    const int N = cfg.resolved_grid_points();

    // probe points strictly inside (0, beta)^n
    PointSet probes;
    probes.dim = cfg.dim;
    for (double frac : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8}) {
      std::vector<double> p(cfg.dim, frac * cfg.beta);
      probes.push_back(p);
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.6, 1.4);
    std::uniform_real_distribution<double> shift(-2.0, 2.0);

    nlohmann::json j;
    j["config"] = config_echo(cfg);
    double worst_direct = 0.0;

    // direct vs reduced on Gaussian inputs
    for (int trial = 0; trial < 5; ++trial) {
      const double sigma = unif(rng);
      const double mu = shift(rng);
      auto gauss = [sigma, mu](std::span<const double> y) {
        double s = 0.0;
        for (double v : y) s += sq((v - mu) / sigma);
        return cplx{std::exp(-0.5 * s), 0.0};
      };
      const auto u = make_grid(cfg.dim, cfg.extent, N, gauss);
      const auto direct = apply_fio_direct(sym, u, ThetaQuadrature{}, probes, cfg.threads);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const cplx red = apply_reduced(u, g, sym.cutoff, &sym.spatial_cutoff, probes[i]);
        num += std::norm(direct[i] - red);
        den += std::norm(red);
      }
      const double rel = std::sqrt(num / den);
      worst_direct = std::max(worst_direct, rel);
    }
    j["direct_vs_reduced_rel_l2"] = worst_direct;

    // reduced vs closed box form at table-aligned eps/g
    double worst_box = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double gx = g(probes[i]);
      const double n0 = find_inversion_threshold(sym.cutoff, cfg.beta, cfg.dim);
      const double n_target = sym.cutoff.h_z * std::ceil(1.2 * n0 / sym.cutoff.h_z);
      const double eps = n_target * gx;
      BoxTestFunction box{eps, cfg.dim};
      auto ubox = [&box](std::span<const double> y) { return cplx{box.value(y), 0.0}; };
      const cplx red = apply_reduced(ubox, g, sym.cutoff, &sym.spatial_cutoff, probes[i]);
      const cplx closed = apply_to_box(eps, gx, sym.cutoff, cfg.dim);
      worst_box = std::max(worst_box, std::abs(red - closed) / std::abs(closed));
    }
    j["reduced_vs_box_rel"] = worst_box;

    // zero input through every evaluator
    const auto zero = make_grid(cfg.dim, cfg.extent, N,
                                [](std::span<const double>) { return cplx{0.0, 0.0}; });
    const auto dz = apply_fio_direct(sym, zero, ThetaQuadrature{}, probes, cfg.threads);
    double zmax = 0.0;
    for (const auto& v : dz) zmax = std::max(zmax, std::abs(v));
    for (std::size_t i = 0; i < probes.size(); ++i)
      zmax = std::max(zmax, std::abs(apply_reduced(
                                zero, g, sym.cutoff, &sym.spatial_cutoff, probes[i])));
    j["zero_input_max"] = zmax;

    const bool ok = worst_direct <= 1e-3 && worst_box <= 1e-4 && zmax <= 1e-14;
    j["pass"] = ok;
    write_text(out_path(cfg, "crosscheck.json"), j.dump(2));
    std::cout << "crosscheck: direct-vs-reduced " << worst_direct
              << ", reduced-vs-box " << worst_box << ", zero " << zmax
              << (ok ? " -> pass" : " -> FAIL") << "\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "crosscheck: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace oscillax
