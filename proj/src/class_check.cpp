#include "oscillax/class_check.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "json.hpp"
#include "oscillax/parallel.hpp"

namespace oscillax {

namespace {

std::vector<std::vector<int>> multi_indices(int dim, int max_order) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dim, 0);
  std::function<void(int, int)> rec = [&](int coord, int left) {
    if (coord == dim) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[coord] = v;
      rec(coord + 1, left - v);
    }
    cur[coord] = 0;
  };
  rec(0, max_order);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

int order_of(const std::vector<int>& mi) {
  int s = 0;
  for (int v : mi) s += v;
  return s;
}

struct FdOp {
  bool theta_axis;
  int coord;
  int order;  // 1 or 2
  double step;
};

cplx mixed_fd(const SymbolEvaluator& a, std::vector<double>& x,
              std::vector<double>& th, std::span<const FdOp> ops) {
  if (ops.empty()) return a(x, th);
  const FdOp op = ops.front();
  const auto rest = ops.subspan(1);
  std::vector<double>& v = op.theta_axis ? th : x;
  const double c0 = v[op.coord];
  cplx out;
  if (op.order == 1) {
    v[op.coord] = c0 + op.step;
    const cplx fp = mixed_fd(a, x, th, rest);
    v[op.coord] = c0 - op.step;
    const cplx fm = mixed_fd(a, x, th, rest);
    out = (fp - fm) / (2.0 * op.step);
  } else {
    v[op.coord] = c0 + op.step;
    const cplx fp = mixed_fd(a, x, th, rest);
    v[op.coord] = c0;
    const cplx f0 = mixed_fd(a, x, th, rest);
    v[op.coord] = c0 - op.step;
    const cplx fm = mixed_fd(a, x, th, rest);
    out = (fp - 2.0 * f0 + fm) / (op.step * op.step);
  }
  v[op.coord] = c0;
  return out;
}

double bound_weight(const SymbolClassSpec& spec, double lambda, int aord, int gord) {
  if (spec.weight)
    return std::pow(lambda, static_cast<double>(aord - gord)) *
           std::pow(spec.weight->eval(lambda), static_cast<double>(gord));
  return std::pow(lambda, spec.m - spec.rho * gord + spec.delta_class * aord);
}

constexpr double kLogFloor = 1e-280;

}  // namespace

CheckReport symbol_class_check(const SymbolEvaluator& a, const SymbolClassSpec& spec,
                               int max_order, const PointSet& x_grid,
                               const PointSet& theta_grid, CheckSettings settings) {
  if (max_order < 0 || max_order > 2)
    throw std::domain_error("symbol_class_check: max_order must be 0..2");
  if (x_grid.dim != theta_grid.dim)
    throw std::domain_error("symbol_class_check: grid dimension mismatch");
  if (x_grid.size() == 0 || theta_grid.size() == 0)
    throw std::domain_error("symbol_class_check: empty grid");
  const int dim = x_grid.dim;

  // Partition theta points into dyadic decades.
  double th_min = std::numeric_limits<double>::infinity(), th_max = 0.0;
  std::vector<int> decade_of(theta_grid.size());
  int top_decade = 0;
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const double mag = euclid_norm(theta_grid[i]);
    th_min = std::min(th_min, mag);
    th_max = std::max(th_max, mag);
    const int d = mag >= 1.0 ? static_cast<int>(std::floor(std::log2(mag))) : 0;
    decade_of[i] = d;
    top_decade = std::max(top_decade, d);
  }
  const int n_decades = top_decade + 1;

  const auto indices = multi_indices(dim, max_order);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) pairs.emplace_back(i, j);

  struct ItemOut {
    double sup = 0.0;
    std::size_t count = 0;
    std::vector<double> arg_x, arg_th;
    std::string error;
  };
  std::vector<ItemOut> items(pairs.size() * n_decades);

  parallel_for(items.size(), [&](std::size_t w) {
    const std::size_t pair_idx = w / n_decades;
    const int decade = static_cast<int>(w % n_decades);
    const auto& alpha = indices[pairs[pair_idx].first];
    const auto& gamma = indices[pairs[pair_idx].second];
    const int aord = order_of(alpha), gord = order_of(gamma);
    ItemOut& out = items[w];
    std::vector<double> x(dim), th(dim);
    std::vector<FdOp> ops;
    for (std::size_t ti = 0; ti < theta_grid.size(); ++ti) {
      if (decade_of[ti] != decade) continue;
      const auto tp = theta_grid[ti];
      const double lambda = 1.0 + euclid_norm(tp);
      double h_x = settings.fd_x_step;
      if (aord > 0) {
        h_x = std::min(h_x, settings.phase_resolution_factor / lambda);
        if (h_x < settings.min_x_step) {
          out.error = "x step needed at |theta|~" + std::to_string(lambda - 1.0) +
                      " is " + std::to_string(h_x) +
                      ", below the round-off floor; lower the top decade or the order";
          return;
        }
      }
      const double h_th = settings.fd_theta_rel_step * lambda;
      ops.clear();
      for (int d = 0; d < dim; ++d)
        if (alpha[d] > 0) ops.push_back({false, d, alpha[d], h_x});
      for (int d = 0; d < dim; ++d)
        if (gamma[d] > 0) ops.push_back({true, d, gamma[d], h_th});
      const double w_bound = bound_weight(spec, lambda, aord, gord);
      for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
        const auto xp = x_grid[xi];
        std::copy(xp.begin(), xp.end(), x.begin());
        std::copy(tp.begin(), tp.end(), th.begin());
        const double val = std::abs(mixed_fd(a, x, th, ops));
        const double ratio = val / w_bound;
        ++out.count;
        if (!(ratio <= out.sup)) {  // also promotes NaN to the sup
          out.sup = ratio;
          out.arg_x.assign(xp.begin(), xp.end());
          out.arg_th.assign(tp.begin(), tp.end());
        }
      }
    }
  }, settings.threads);

  for (const auto& it : items)
    if (!it.error.empty()) throw ResolutionError("symbol_class_check: " + it.error);

  CheckReport rep;
  rep.max_order = max_order;
  rep.settings = settings;
  rep.theta_min = th_min;
  rep.theta_max = th_max;
  rep.x_points = x_grid.size();
  rep.theta_points = theta_grid.size();
  rep.weight_label = spec.weight ? spec.weight->label : "lambda-power";
  if (th_min >= 1.0)
    rep.notes.push_back(
        "theta grid excludes the unit ball |theta| <= 1 (psi is not smooth at the origin)");

  rep.pass = true;
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    PairResult pr;
    pr.alpha = indices[pairs[pi].first];
    pr.gamma = indices[pairs[pi].second];
    pr.decade_sup.assign(n_decades, 0.0);
    pr.decade_count.assign(n_decades, 0);
    for (int d = 0; d < n_decades; ++d) {
      const ItemOut& it = items[pi * n_decades + d];
      pr.decade_sup[d] = it.sup;
      pr.decade_count[d] = it.count;
      if (!(it.sup <= pr.sup_ratio)) {
        pr.sup_ratio = it.sup;
        pr.arg_x = it.arg_x;
        pr.arg_theta = it.arg_th;
      }
    }
    // Trend over the top two populated decades.
    int hi = -1, lo = -1;
    for (int d = n_decades - 1; d >= 0; --d) {
      if (pr.decade_count[d] == 0) continue;
      if (hi < 0) hi = d;
      else { lo = d; break; }
    }
    if (hi >= 0 && lo >= 0) {
      const double shi = std::max(pr.decade_sup[hi], kLogFloor);
      const double slo = std::max(pr.decade_sup[lo], kLogFloor);
      pr.trend_slope = (std::log(shi) - std::log(slo)) / ((hi - lo) * std::log(2.0));
    } else {
      pr.trend_slope = 0.0;
    }
    pr.pass = std::isfinite(pr.sup_ratio) && pr.trend_slope < settings.slope_threshold;
    rep.pass = rep.pass && pr.pass;
    rep.entries.push_back(std::move(pr));
  }
  if (n_decades < 2)
    rep.notes.push_back("fewer than two decades sampled: trend not meaningful");
  return rep;
}

std::string CheckReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass;
  j["max_order"] = max_order;
  j["weight"] = weight_label;
  j["theta_min"] = theta_min;
  j["theta_max"] = theta_max;
  j["x_points"] = x_points;
  j["theta_points"] = theta_points;
  j["settings"] = {{"fd_x_step", settings.fd_x_step},
                   {"fd_theta_rel_step", settings.fd_theta_rel_step},
                   {"phase_resolution_factor", settings.phase_resolution_factor},
                   {"min_x_step", settings.min_x_step},
                   {"slope_threshold", settings.slope_threshold}};
  j["notes"] = notes;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["alpha"] = e.alpha;
    je["gamma"] = e.gamma;
    je["sup_ratio"] = e.sup_ratio;
    je["arg_x"] = e.arg_x;
    je["arg_theta"] = e.arg_theta;
    je["decade_sup"] = e.decade_sup;
    je["trend_slope"] = e.trend_slope;
    je["pass"] = e.pass;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

PointSet make_x_grid(int dim, int octaves, int per_octave) {
  PointSet ps;
  ps.dim = dim;
  std::vector<std::vector<double>> dirs;
  if (dim == 1) {
    dirs = {{1.0}, {-1.0}};
  } else if (dim == 2) {
    for (int i = 0; i < 8; ++i) {
      const double ang = (i + 0.5) * kTwoPi / 8.0;
      dirs.push_back({std::cos(ang), std::sin(ang)});
    }
  } else {
    throw std::domain_error("make_x_grid: dim must be 1 or 2");
  }
  std::vector<double> origin(dim, 0.0);
  ps.push_back(origin);
  for (int o = 0; o < octaves; ++o) {
    for (int j = 0; j < per_octave; ++j) {
      const double mag = std::exp2(-o - 1.0 + (j + 1.0) / per_octave);
      for (const auto& d : dirs) {
        std::vector<double> p(dim);
        for (int c = 0; c < dim; ++c) p[c] = mag * d[c];
        ps.push_back(p);
      }
    }
  }
  return ps;
}

PointSet make_theta_grid(int dim, int decade_lo, int decade_hi, int per_decade) {
  if (decade_hi < decade_lo) throw std::domain_error("make_theta_grid: bad decade range");
  PointSet ps;
  ps.dim = dim;
  std::vector<std::vector<double>> dirs;
  if (dim == 1) {
    dirs = {{1.0}, {-1.0}};
  } else if (dim == 2) {
    for (int i = 0; i < 8; ++i) {
      const double ang = (i + 0.5) * kTwoPi / 8.0;
      dirs.push_back({std::cos(ang), std::sin(ang)});
    }
  } else {
    throw std::domain_error("make_theta_grid: dim must be 1 or 2");
  }
  for (int k = decade_lo; k <= decade_hi; ++k) {
    for (int j = 0; j < per_decade; ++j) {
      const double mag = std::exp2(k + static_cast<double>(j) / per_decade);
      for (const auto& d : dirs) {
        std::vector<double> p(dim);
        for (int c = 0; c < dim; ++c) p[c] = mag * d[c];
        ps.push_back(p);
      }
    }
  }
  return ps;
}

}  // namespace oscillax
