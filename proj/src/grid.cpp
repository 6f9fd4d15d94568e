#include "oscillax/grid.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace oscillax {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_grid_args(int dim, double extent, int n) {
  if (dim < 1 || dim > 3) throw std::domain_error("grid: dim must be 1..3");
  if (!(extent > 0.0)) throw std::domain_error("grid: extent must be > 0");
  if (!is_pow2(n)) throw std::domain_error("grid: points_per_axis must be a power of two");
}

}  // namespace

GridFunction make_grid(int dim, double extent, int points_per_axis,
                       const std::function<cplx(std::span<const double>)>& f) {
  check_grid_args(dim, extent, points_per_axis);
  GridFunction u;
  u.dim = dim;
  u.extent = extent;
  u.points_per_axis = points_per_axis;
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= points_per_axis;
  u.values.resize(total);
  std::array<double, 3> y{};
  std::array<int, 3> idx{};
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % points_per_axis);
      rem /= points_per_axis;
    }
    for (int d = 0; d < dim; ++d) y[d] = u.coord(idx[d]);
    u.values[flat] = f(std::span<const double>(y.data(), dim));
  }
  return u;
}

double l2_norm(const GridFunction& u) {
  std::vector<double> sq_mod(u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i)
    sq_mod[i] = std::norm(u.values[i]);
  double cell = 1.0;
  for (int d = 0; d < u.dim; ++d) cell *= u.step();
  return std::sqrt(cell * pairwise_sum(sq_mod));
}

namespace {

// 4-point Lagrange weights for fractional offset s in [0,1] relative to the
// second node of the stencil.
inline std::array<double, 4> cubic_weights(double s) {
  const double s2 = s * s, s3 = s2 * s;
  return {(-s3 + 3 * s2 - 2 * s) / 6.0, (3 * s3 - 6 * s2 - 3 * s + 6) / 6.0,
          (-3 * s3 + 3 * s2 + 6 * s) / 6.0, (s3 - s) / 6.0};
}

}  // namespace

cplx interp_cubic(const GridFunction& u, std::span<const double> y, double* outside) {
  const int N = u.points_per_axis;
  const double h = u.step();
  std::array<std::array<double, 4>, 3> w{};
  std::array<int, 3> base{};
  for (int d = 0; d < u.dim; ++d) {
    const double t = (y[d] + u.extent) / h;  // fractional index
    if (t < -1.0 || t > N) {
      if (outside) *outside = std::max(*outside, std::abs(y[d]) - u.extent);
      return {0.0, 0.0};
    }
    const double fl = std::floor(t);
    base[d] = static_cast<int>(fl) - 1;
    w[d] = cubic_weights(t - fl);
  }
  cplx acc{0.0, 0.0};
  const int n1 = u.dim > 1 ? 4 : 1;
  const int n2 = u.dim > 2 ? 4 : 1;
  for (int i = 0; i < 4; ++i) {
    const int j0 = base[0] + i;
    const bool in0 = j0 >= 0 && j0 < N;
    for (int i1 = 0; i1 < n1; ++i1) {
      const int j1 = base[1] + i1;
      const bool in1 = u.dim < 2 || (j1 >= 0 && j1 < N);
      for (int i2 = 0; i2 < n2; ++i2) {
        const int j2 = base[2] + i2;
        const bool in2 = u.dim < 3 || (j2 >= 0 && j2 < N);
        if (!(in0 && in1 && in2)) continue;
        std::size_t flat = static_cast<std::size_t>(j0);
        if (u.dim > 1) flat = flat * N + j1;
        if (u.dim > 2) flat = flat * N + j2;
        double ww = w[0][i];
        if (u.dim > 1) ww *= w[1][i1];
        if (u.dim > 2) ww *= w[2][i2];
        acc += ww * u.values[flat];
      }
    }
  }
  return acc;
}

double BoxTestFunction::value(std::span<const double> y) const {
  if (!(epsilon > 0.0)) throw std::domain_error("BoxTestFunction: epsilon must be > 0");
  double v = std::pow(kTwoPi, -0.5 * dim);
  for (int d = 0; d < dim; ++d) {
    const double a = std::abs(y[d]);
    if (a > epsilon) return 0.0;
    if (a == epsilon) v *= 0.5;
  }
  return v;
}

double BoxTestFunction::l2() const {
  return std::pow(kTwoPi, -0.5 * dim) * std::pow(2.0 * epsilon, 0.5 * dim);
}

GridFunction box_to_grid(const BoxTestFunction& box, double extent,
                         int points_per_axis, double* eps_snapped) {
  const double h = 2.0 * extent / points_per_axis;
  const double eps = std::max(h, std::round(box.epsilon / h) * h);
  if (eps_snapped) *eps_snapped = eps;
  BoxTestFunction snapped{eps, box.dim};
  return make_grid(box.dim, extent, points_per_axis,
                   [&snapped](std::span<const double> y) {
                     return cplx{snapped.value(y), 0.0};
                   });
}

void write_grid(const GridFunction& u, const std::string& bin_path,
                const std::string& sidecar_path) {
  static_assert(std::endian::native == std::endian::little,
                "grid records are little endian");
  std::ofstream out(bin_path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid: cannot open " + bin_path);
  const std::uint32_t dim = static_cast<std::uint32_t>(u.dim);
  const std::uint32_t ppa = static_cast<std::uint32_t>(u.points_per_axis);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&ppa), 4);
  out.write(reinterpret_cast<const char*>(&u.extent), 8);
  std::vector<float> buf(2 * u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    buf[2 * i] = static_cast<float>(u.values[i].real());
    buf[2 * i + 1] = static_cast<float>(u.values[i].imag());
  }
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw std::runtime_error("write_grid: short write to " + bin_path);

  nlohmann::json j;
  j["dim"] = u.dim;
  j["points_per_axis"] = u.points_per_axis;
  j["extent"] = u.extent;
  j["dtype"] = "complex64";
  j["byte_order"] = "little";
  j["layout"] = "row-major";
  j["header"] = "u32 dim, u32 points_per_axis, f64 extent";
  j["data"] = bin_path;
  std::ofstream side(sidecar_path);
  if (!side) throw std::runtime_error("write_grid: cannot open " + sidecar_path);
  side << j.dump(2) << "\n";
}

GridFunction read_grid(const std::string& bin_path) {
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid: cannot open " + bin_path);
  std::uint32_t dim = 0, ppa = 0;
  double extent = 0.0;
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&ppa), 4);
  in.read(reinterpret_cast<char*>(&extent), 8);
  GridFunction u;
  u.dim = static_cast<int>(dim);
  u.extent = extent;
  u.points_per_axis = static_cast<int>(ppa);
  std::size_t total = 1;
  for (std::uint32_t d = 0; d < dim; ++d) total *= ppa;
  std::vector<float> buf(2 * total);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!in) throw std::runtime_error("read_grid: truncated record in " + bin_path);
  u.values.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    u.values[i] = cplx{buf[2 * i], buf[2 * i + 1]};
  return u;
}

}  // namespace oscillax
