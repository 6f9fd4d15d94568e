#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "oscillax/mollifier.hpp"

using namespace oscillax;

namespace {

// Brute-force envelope oracle: min over l = 1..20 of max(b_l(t), l). The
// tower constant overflows double for l >= 4, where b_l(t) sits in
// (1, 1 + 2^-1000) for any representable t, so those terms reduce to l.
double envelope_oracle(double t) {
  double best = std::numeric_limits<double>::infinity();
  for (int l = 1; l <= 20; ++l) {
    const double bl = l <= 3 ? iterated_log(l, t) : 1.0;
    best = std::min(best, std::max(bl, static_cast<double>(l)));
  }
  return best;
}

// log-spaced grid on [1e-6, 1]
std::vector<double> log_grid(int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = std::pow(10.0, -6.0 + 6.0 * i / (count - 1.0));
  return g;
}

void check_c_conditions(const Mollifier& b, const SeedFunction& seed) {
  CHECK(b.eval(0.0) == 0.0);
  const auto grid = log_grid(161);
  double prev = b.eval(0.0);
  for (double t : grid) {
    const double v = b.eval(t);
    CHECK(v > prev);                  // strictly increasing
    CHECK(v >= seed.eval(t) * (1.0 - 1e-12));  // dominates the seed
    prev = v;
  }
  REQUIRE(b.derivative_bound_constants.size() >= 2);
  const double c1 = b.derivative_bound_constants[0];
  const double c2 = b.derivative_bound_constants[1];
  for (double t : log_grid(97)) {
    const double h = t * 1e-4;
    const double fp = b.eval(t + h), f0 = b.eval(t), fm = b.eval(t - h);
    CHECK(std::abs((fp - fm) / (2 * h)) * t <= c1);
    CHECK(std::abs((fp - 2 * f0 + fm) / (h * h)) * t * t <= c2);
  }
}

}  // namespace

TEST_CASE("iterated_log tower base cases") {
  CHECK(iterated_log(1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(iterated_log(2, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(iterated_log(3, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  // oracle: mpmath log(e + 100) to 30 digits
  CHECK(iterated_log(1, 100.0) == doctest::Approx(4.63199011305388988638).epsilon(1e-14));
}

TEST_CASE("iterated_log domain errors") {
  CHECK_THROWS_AS(iterated_log(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(iterated_log(-2, 1.0), std::domain_error);
  CHECK_THROWS_AS(iterated_log(4, 1.0), std::domain_error);  // tower overflows
  CHECK_THROWS_AS(iterated_log(1, -0.5), std::domain_error);
}

TEST_CASE("iterated_log is positive and increasing") {
  for (int l = 1; l <= 3; ++l) {
    double prev = 0.0;
    for (double t : {0.0, 0.5, 2.0, 100.0, 1e6, 1e12}) {
      const double v = iterated_log(l, t);
      CHECK(v > 0.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("diagonal_envelope constant-offset family") {
  std::vector<WeightFunction> fam;
  for (int l = 1; l <= 6; ++l)
    fam.push_back({[l](double t) { return t + l; }, "t+" + std::to_string(l)});
  const auto b0 = diagonal_envelope(fam);
  for (double t : {0.0, 0.3, 1.0, 7.0, 123.0})
    CHECK(b0.eval(t) == doctest::Approx(t + 1.0).epsilon(1e-15));
}

TEST_CASE("diagonal_envelope iterated-log family matches enumeration oracle") {
  const auto b0 = diagonal_envelope(make_iterated_log_family(3));
  CHECK(b0.eval(10.0) == doctest::Approx(2.0).epsilon(1e-15));  // oracle value
  for (double t : {1.0, 10.0, 100.0, 1e4, 1e8, 1e16, 1e100})
    CHECK(b0.eval(t) == doctest::Approx(envelope_oracle(t)).epsilon(1e-13));
}

TEST_CASE("diagonal_envelope is dominated by max(b_l, l)") {
  const auto fam = make_iterated_log_family(3);
  const auto b0 = diagonal_envelope(fam);
  for (double t : {1.0, 5.0, 50.0, 1e3, 1e7, 1e15}) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const double l = static_cast<double>(i + 1);
      CHECK(b0.eval(t) <= std::max(fam[i].eval(t), l) * (1.0 + 1e-15));
      if (fam[i].eval(t) >= l)  // crossover reached: direct domination
        CHECK(b0.eval(t) <= fam[i].eval(t) * (1.0 + 1e-15));
    }
  }
}

TEST_CASE("diagonal_envelope grows without bound at weight scale") {
  const auto b0 = diagonal_envelope(make_iterated_log_family(3));
  CHECK(b0.eval(1e9) > 2.9);  // all three branches exceed 2.9 by t = 1e9
  std::vector<WeightFunction> lin;
  for (int l = 1; l <= 4; ++l)
    lin.push_back({[l](double t) { return t + l; }, "t+l"});
  const auto b0lin = diagonal_envelope(lin);
  for (double m : {10.0, 100.0, 1e6}) CHECK(b0lin.eval(2.0 * m) > m);
}

TEST_CASE("diagonal_envelope rejects an empty family") {
  CHECK_THROWS_AS(diagonal_envelope({}), std::domain_error);
}

TEST_CASE("weight_to_seed identity weight is the identity") {
  const WeightFunction ident{[](double t) { return t; }, "t"};
  const auto f0 = weight_to_seed(ident);
  CHECK(f0.eval(0.0) == 0.0);
  for (double t : log_grid(33))
    CHECK(f0.eval(t) == doctest::Approx(t).epsilon(1e-15));
}

TEST_CASE("weight_to_seed log weight") {
  const auto f0 = weight_to_seed(make_iterated_log_weight(1));
  // oracle: 1/log(e+1) to 30 digits
  CHECK(f0.eval(1.0) == doctest::Approx(0.761462859614659997971).epsilon(1e-14));
  CHECK(f0.eval(0.0) == 0.0);
  CHECK(f0.eval(0.5) == doctest::Approx(1.0 / std::log(std::exp(1.0) + 2.0)).epsilon(1e-14));
}

TEST_CASE("smooth_mollifier fast path formula and bounds") {
  const auto seed = iterated_log_seed(1);
  const auto b = smooth_mollifier(seed);
  const double eta = seed.eval(1.0);
  for (double t : log_grid(65))
    CHECK(b.eval(t) == doctest::Approx(seed.eval(t) + eta * t).epsilon(1e-15));
  check_c_conditions(b, seed);
  // |b'(t)| * t stays bounded across the sweep (finite-difference oracle)
  double sup = 0.0;
  for (double t : log_grid(161)) {
    const double h = t * 1e-4;
    sup = std::max(sup, std::abs(b.eval(t + h) - b.eval(t - h)) / (2 * h) * t);
  }
  CHECK(sup < 2.0);
}

TEST_CASE("smooth_mollifier generic path from the linear seed") {
  const SeedFunction seed{[](double t) { return t; }, "t", false};
  const auto b = smooth_mollifier(seed);
  check_c_conditions(b, seed);
  CHECK(b.eval(0.5) >= 0.5);
  CHECK(b.eval(1e-6) < 2e-5);  // vanishes at the seed's scale
}

TEST_CASE("smooth_mollifier generic path from the diagonal envelope") {
  const auto seed = weight_to_seed(diagonal_envelope(make_iterated_log_family(3)));
  const auto b = smooth_mollifier(seed);
  check_c_conditions(b, seed);
}

TEST_CASE("smooth_mollifier rejects bad seeds") {
  CHECK_THROWS_AS(smooth_mollifier(SeedFunction{[](double) { return 0.0; }, "zero", false}),
                  std::domain_error);
  CHECK_THROWS_AS(smooth_mollifier(SeedFunction{[](double) { return 0.3; }, "no-zero", false}),
                  std::domain_error);
}

TEST_CASE("linear mollifier satisfies its exact constants") {
  const auto b = linear_mollifier();
  check_c_conditions(b, linear_seed());
}

TEST_CASE("radial scale invariants") {
  const auto b = smooth_mollifier(iterated_log_seed(1));
  SUBCASE("n=1: g(x)/|x| = b(|x|) decreases to 0 along dyadic radii") {
    const RadialScale g{b, 0.9, 1};
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 40; ++k) {
      const double x = std::ldexp(1.0, -k);
      const double ratio = g(std::span<const double>(&x, 1)) / x;
      CHECK(ratio < prev);
      prev = ratio;
    }
    CHECK(prev < 0.05);
  }
  SUBCASE("n=2: increasing in each coordinate") {
    const RadialScale g{b, 0.9, 2};
    for (double fixed : {0.1, 0.4, 0.8}) {
      double prev = 0.0;
      for (int i = 1; i <= 16; ++i) {
        const double xy[2] = {fixed, 0.05 * i};
        const double v = g(std::span<const double>(xy, 2));
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("mollifier JSON record") {
  const auto b = smooth_mollifier(iterated_log_seed(1));
  const auto j = nlohmann::json::parse(mollifier_to_json(b));
  CHECK(j.at("label").get<std::string>() == b.label);
  const auto ts = j.at("grid_t").get<std::vector<double>>();
  const auto vs = j.at("grid_b").get<std::vector<double>>();
  REQUIRE(ts.size() == vs.size());
  CHECK(vs.front() == 0.0);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(vs[i] == b.eval(ts[i]));  // bit-exact round trip through doubles
}
