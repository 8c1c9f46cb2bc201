#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "linequad/geometry.hpp"
#include "linequad/simd/dispatch.hpp"
#include "linequad/vandermonde.hpp"

using namespace linequad;

namespace {

struct Data {
  int n;
  std::vector<double> yx, yy, yz, fx, fy, fz, w, l1, l3, l5, t, speed;
  double x[3];

  simd::NodeArrays arrays() const { return {yx.data(), yy.data(), yz.data(), fx.data(), fy.data(), fz.data(), n}; }
};

/// Random nodes near a short arc, with odd sizes to exercise the vector tails.
Data make_data(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Data d;
  d.n = n;
  const auto& rule = gauss_legendre(n);
  for (int j = 0; j < n; ++j) {
    const double t = rule.nodes[j];
    d.t.push_back(t);
    d.yx.push_back(0.1 * t);
    d.yy.push_back(0.02 * t * t + 0.001 * u(rng));
    d.yz.push_back(0.005 * std::sin(3.0 * t));
    d.fx.push_back(u(rng));
    d.fy.push_back(u(rng));
    d.fz.push_back(u(rng));
    d.w.push_back(0.1 * rule.weights[j]);
    d.l1.push_back(u(rng));
    d.l3.push_back(u(rng));
    d.l5.push_back(u(rng));
    d.speed.push_back(0.1 + 0.01 * u(rng));
  }
  d.x[0] = 0.013;
  d.x[1] = 0.004;
  d.x[2] = -0.002;
  return d;
}

double rel(double a, double b, double scale) { return std::abs(a - b) / scale; }

}  // namespace

TEST_CASE("dispatch reports the selected instruction set") {
  const std::string_view isa = simd::active_isa();
  CHECK((isa == "scalar" || isa == "avx2"));
  const char* env = std::getenv("LINEQUAD_SIMD");
  if (env && std::string_view(env) == "scalar") {
    CHECK(isa == "scalar");
    CHECK(&simd::kernels() == &simd::scalar_kernels());
  }
  if (isa == "avx2") CHECK(&simd::kernels() == simd::avx2_kernels());
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const simd::KernelTable* vec = simd::avx2_kernels();
  if (!vec) {
    MESSAGE("built without AVX2 support; nothing to compare");
    return;
  }
  const simd::KernelTable& ref = simd::scalar_kernels();
  for (int n : {1, 3, 7, 16, 21, 32}) {
    const Data d = make_data(n, 100 + n);

    double a[3] = {0, 0, 0}, b[3] = {0, 0, 0};
    ref.slender_direct_sum(d.arrays(), d.w.data(), d.x, 1e-3, a);
    vec->slender_direct_sum(d.arrays(), d.w.data(), d.x, 1e-3, b);
    double scale = std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]);
    for (int c = 0; c < 3; ++c) CHECK(rel(a[c], b[c], scale) < 1e-14);

    double e[3] = {0, 0, 0}, f[3] = {0, 0, 0};
    ref.slender_weighted_sum(d.arrays(), d.l1.data(), d.l3.data(), d.l5.data(), d.x, 1e-3, e);
    vec->slender_weighted_sum(d.arrays(), d.l1.data(), d.l3.data(), d.l5.data(), d.x, 1e-3, f);
    scale = std::abs(e[0]) + std::abs(e[1]) + std::abs(e[2]);
    for (int c = 0; c < 3; ++c) CHECK(rel(e[c], f[c], scale) < 1e-14);

    const cplx t0(0.2, 0.03);
    for (bool with_higher : {true, false}) {
      std::vector<double> r1 = d.l1, r3 = d.l3, r5 = d.l5, v1 = d.l1, v3 = d.l3, v5 = d.l5;
      ref.ssq3d_correct(d.t.data(), t0, d.yx.data(), d.yy.data(), d.yz.data(), d.speed.data(), d.x, n,
                        r1.data(), with_higher ? r3.data() : nullptr, with_higher ? r5.data() : nullptr);
      vec->ssq3d_correct(d.t.data(), t0, d.yx.data(), d.yy.data(), d.yz.data(), d.speed.data(), d.x, n,
                         v1.data(), with_higher ? v3.data() : nullptr, with_higher ? v5.data() : nullptr);
      for (int j = 0; j < n; ++j) {
        CHECK(rel(r1[j], v1[j], std::abs(r1[j])) < 1e-14);
        CHECK(rel(r3[j], v3[j], std::abs(r3[j])) < 1e-13);
        CHECK(rel(r5[j], v5[j], std::abs(r5[j])) < 1e-13);
      }
    }

    const GaussDualSolver& solver = gauss_dual_solver(n);
    std::vector<double> z(4 * static_cast<size_t>(n)), zr, zv;
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < 4; ++r) z[4 * i + r] = (i % 2 == 0 ? 2.0 / (i + 1) : 0.0) * (r + 1) + 0.01 * r * i;
    zr = zv = z;
    ref.bp_dual4(solver.nodes().data(), solver.inverse_differences().data(), n, zr.data());
    vec->bp_dual4(solver.nodes().data(), solver.inverse_differences().data(), n, zv.data());
    // FMA contraction changes the rounding; the dual solve amplifies such
    // differences in individual weights at larger n, but not in sums
    // against smooth data, which is how the weights are used.
    for (int r = 0; r < 4; ++r) {
      double sr = 0.0, sv = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        const double f = std::cos(1.5 * solver.nodes()[i]);
        sr += zr[4 * i + r] * f;
        sv += zv[4 * i + r] * f;
        scale += std::abs(zr[4 * i + r] * f);
      }
      CHECK(rel(sr, sv, scale) < 1e-14);
    }
    if (n <= 7) {
      double zscale = 0.0;
      for (double v : zr) zscale = std::max(zscale, std::abs(v));
      for (size_t i = 0; i < z.size(); ++i) CHECK(rel(zr[i], zv[i], zscale) < 1e-13);
    }

    std::vector<double> cre(d.l1), cim(d.l3), tre(d.yx), tim(d.yy);
    const cplx zeta(0.01, 0.003);
    const cplx sr = ref.cauchy_sum(cre.data(), cim.data(), tre.data(), tim.data(), n, zeta);
    const cplx sv = vec->cauchy_sum(cre.data(), cim.data(), tre.data(), tim.data(), n, zeta);
    double cscale = 0.0;
    for (int j = 0; j < n; ++j) cscale += std::abs(cplx(cre[j], cim[j]) / (cplx(tre[j], tim[j]) - zeta));
    CHECK(std::abs(sr - sv) / cscale < 1e-14);
  }
}
