#include "oscillax/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace oscillax {

double iterated_log(int l, double t) {
  if (l < 1) throw std::domain_error("iterated_log: l must be >= 1");
  if (!(t >= 0.0)) throw std::domain_error("iterated_log: t must be >= 0");
  double tower = 1.0;
  for (int i = 0; i < l; ++i) {
    tower = std::exp(tower);
    if (!std::isfinite(tower))
      throw std::domain_error("iterated_log: constant tower overflows at l=" +
                              std::to_string(l));
  }
  double v = tower + t;
  for (int i = 0; i < l; ++i) v = std::log(v);
  return v;
}

WeightFunction make_iterated_log_weight(int l) {
  iterated_log(l, 0.0);  // validate l up front
  return WeightFunction{[l](double t) { return iterated_log(l, t); },
                        "iterated-log-" + std::to_string(l)};
}

std::vector<WeightFunction> make_iterated_log_family(int max_l) {
  std::vector<WeightFunction> fam;
  for (int l = 1; l <= max_l; ++l) fam.push_back(make_iterated_log_weight(l));
  return fam;
}

WeightFunction diagonal_envelope(const std::vector<WeightFunction>& family) {
  if (family.empty())
    throw std::domain_error("diagonal_envelope: empty weight family");
  auto fam = std::make_shared<std::vector<WeightFunction>>(family);
  auto eval = [fam](double t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fam->size(); ++i) {
      const double l = static_cast<double>(i + 1);
      if (l >= best) break;  // max(b_l, l) >= l can no longer improve
      best = std::min(best, std::max((*fam)[i].eval(t), l));
    }
    return best;
  };
  return WeightFunction{eval, "diagonal-envelope[" + std::to_string(family.size()) + "]"};
}

SeedFunction weight_to_seed(const WeightFunction& b0) {
  auto w = b0.eval;
  return SeedFunction{
      [w](double t) { return t > 0.0 ? 1.0 / w(1.0 / t) : 0.0; },
      "1/(" + b0.label + ")(1/t)", false};
}

SeedFunction iterated_log_seed(int l) {
  iterated_log(l, 0.0);
  return SeedFunction{
      [l](double t) { return t > 0.0 ? 1.0 / iterated_log(l, 1.0 / t) : 0.0; },
      "1/iterated-log-" + std::to_string(l) + "(1/t)", true};
}

SeedFunction linear_seed() {
  return SeedFunction{[](double t) { return t; }, "identity", true};
}

namespace {

// Smooth bump on (1,2), all derivatives vanishing at the endpoints.
double chi_raw(double tau) {
  const double a = tau - 1.0, b = 2.0 - tau;
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return std::exp(-1.0 / (a * b));
}

// Antiderivative table of the normalized bump: X(1) = 0, X(2) = 1, X' = chi.
// Hermite interpolation uses the exact slope chi, so X is accurate to ~h^4.
class ChiIntegral {
 public:
  ChiIntegral() {
    const int n = 1 << 15;
    h_ = 1.0 / n;
    raw_.resize(n + 1);
    cum_.resize(n + 1);
    for (int i = 0; i <= n; ++i) raw_[i] = chi_raw(1.0 + i * h_);
    cum_[0] = 0.0;
    for (int i = 1; i <= n; ++i)
      cum_[i] = cum_[i - 1] + 0.5 * h_ * (raw_[i - 1] + raw_[i]);
    const double total = cum_[n];
    for (auto& v : cum_) v /= total;
    for (auto& v : raw_) v /= total;
  }

  double at(double tau) const {
    if (tau <= 1.0) return 0.0;
    if (tau >= 2.0) return 1.0;
    const double u = (tau - 1.0) / h_;
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= raw_.size() - 1) i = raw_.size() - 2;
    const double s = u - i;
    const double y0 = cum_[i], y1 = cum_[i + 1];
    const double m0 = raw_[i] * h_, m1 = raw_[i + 1] * h_;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
  }

 private:
  double h_;
  std::vector<double> raw_;
  std::vector<double> cum_;
};

const ChiIntegral& chi_integral() {
  static const ChiIntegral table;
  return table;
}

constexpr int kOctaves = 160;  // dyadic bins down to 2^-160

// Step envelope of the seed: values M_k = sup f0 over [0, min(1, 2^-k+1)],
// one per dyadic bin [2^-k-1, 2^-k).
struct StepEnvelope {
  std::vector<double> m;  // m[k], k = 0..kOctaves

  double at(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return m[0];
    int k = static_cast<int>(std::ceil(-std::log2(t))) - 1;
    k = std::clamp(k, 0, kOctaves);
    return m[k];
  }
};

StepEnvelope build_step_envelope(const std::function<double(double)>& f0) {
  // Per-octave sups from 33 samples each, then suffix maxima.
  std::vector<double> octave_sup(kOctaves + 2, 0.0);
  for (int j = 0; j <= kOctaves + 1; ++j) {
    const double lo = std::ldexp(1.0, -j - 1);
    const double hi = std::min(1.0, std::ldexp(1.0, -j));
    double s = 0.0;
    for (int i = 0; i <= 32; ++i)
      s = std::max(s, f0(lo + (hi - lo) * i / 32.0));
    octave_sup[j] = s;
  }
  for (int j = kOctaves; j >= 0; --j)
    octave_sup[j] = std::max(octave_sup[j], octave_sup[j + 1]);
  StepEnvelope env;
  env.m.resize(kOctaves + 1);
  for (int k = 0; k <= kOctaves; ++k) env.m[k] = octave_sup[std::max(k - 1, 0)];
  return env;
}

// b~(t) = integral over [1,2] of s(t tau) chi(tau) dtau. [t, 2t] spans one
// octave, so s(t tau) has at most two jumps; the integral is assembled
// exactly from the antiderivative of chi.
double smoothed_envelope(const StepEnvelope& env, double t) {
  if (t <= 0.0) return 0.0;
  const ChiIntegral& X = chi_integral();
  double cuts[4] = {1.0, 2.0, 2.0, 2.0};
  int ncuts = 2;
  // dyadic points 2^-k strictly inside (t, 2t)
  const int k_lo = static_cast<int>(std::floor(-std::log2(2.0 * t))) + 1;
  for (int k = k_lo; k <= k_lo + 1; ++k) {
    const double d = std::ldexp(1.0, -k);
    const double tau = d / t;
    if (tau > 1.0 && tau < 2.0) cuts[ncuts++] = tau;
  }
  std::sort(cuts, cuts + ncuts);
  double acc = 0.0;
  for (int i = 0; i + 1 < ncuts; ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    acc += env.at(t * 0.5 * (a + b)) * (X.at(b) - X.at(a));
  }
  return acc;
}

void check_seed_preconditions(const SeedFunction& seed) {
  const double at0 = seed.eval(0.0);
  if (!(std::abs(at0) <= 1e-14))
    throw std::domain_error("smooth_mollifier: seed(0) != 0 (" + seed.label + ")");
  for (int i = 0; i <= 96; ++i) {
    const double t = std::pow(10.0, -12.0 + 12.0 * i / 96.0);
    if (!(seed.eval(t) > 0.0))
      throw std::domain_error("smooth_mollifier: seed not positive on (0,1] at t=" +
                              std::to_string(t));
  }
}

std::vector<double> measure_bound_constants(const std::function<double(double)>& b) {
  // sup of |FD^n b(t)| t^n over a log grid in [1e-6, 1], relative step t*1e-4.
  double c1 = 0.0, c2 = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double t = std::pow(10.0, -6.0 + 6.0 * i / 160.0);
    const double h = t * 1e-4;
    const double fp = b(t + h), f0 = b(t), fm = b(t - h);
    c1 = std::max(c1, std::abs((fp - fm) / (2 * h)) * t);
    c2 = std::max(c2, std::abs((fp - 2 * f0 + fm) / (h * h)) * t * t);
  }
  return {1.25 * c1, 1.25 * c2 + 1e-9};
}

}  // namespace

Mollifier smooth_mollifier(const SeedFunction& seed) {
  check_seed_preconditions(seed);
  Mollifier out;
  out.source_seed = seed.label;
  if (seed.smooth_fast_path) {
    const double eta = seed.eval(1.0);
    auto f = seed.eval;
    out.eval = [f, eta](double t) { return f(t) + eta * t; };
    out.label = "fast-path(" + seed.label + ")";
  } else {
    auto env = std::make_shared<StepEnvelope>(build_step_envelope(seed.eval));
    const double eta = env->m[0];
    out.eval = [env, eta](double t) {
      return t > 0.0 ? smoothed_envelope(*env, t) + eta * t : 0.0;
    };
    out.label = "smoothed(" + seed.label + ")";
  }
  out.derivative_bound_constants = measure_bound_constants(out.eval);
  return out;
}

Mollifier linear_mollifier() {
  Mollifier out;
  out.eval = [](double t) { return t; };
  out.label = "linear";
  out.source_seed = "identity";
  out.derivative_bound_constants = {1.05, 1e-6};
  return out;
}

Mollifier constant_mollifier(double c) {
  if (!(c > 0.0)) throw std::domain_error("constant_mollifier: c must be > 0");
  Mollifier out;
  out.eval = [c](double) { return c; };
  out.label = "constant-" + std::to_string(c);
  out.source_seed = "none (inadmissible control)";
  out.derivative_bound_constants = {1e-12, 1e-12};
  return out;
}

std::string mollifier_to_json(const Mollifier& b, int samples) {
  nlohmann::json j;
  j["label"] = b.label;
  j["source_seed"] = b.source_seed;
  j["derivative_bound_constants"] = b.derivative_bound_constants;
  std::vector<double> ts, vs;
  ts.push_back(0.0);
  vs.push_back(b.eval(0.0));
  for (int i = 0; i < samples; ++i) {
    const double t = std::pow(10.0, -6.0 + 6.0 * i / (samples - 1.0));
    ts.push_back(t);
    vs.push_back(b.eval(t));
  }
  j["grid_t"] = ts;
  j["grid_b"] = vs;
  return j.dump(2);
}

}  // namespace oscillax
