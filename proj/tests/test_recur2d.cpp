#include <doctest.h>

#include <cmath>

#include "linequad/apps.hpp"
#include "linequad/recur2d.hpp"
#include "support/oracle.hpp"

using namespace linequad;

namespace {

double rel(cplx got, oracle::lc ref, oracle::ld scale) {
  const cplx r(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
  return std::abs(got - r) / static_cast<double>(scale);
}

}  // namespace

TEST_CASE("p_m1: real closed forms") {
  const auto p = p_m1(2.0, 4);
  CHECK(p[0].real() == doctest::Approx(-std::log(3.0)).epsilon(1e-15));
  CHECK(std::abs(p[0].imag()) < 1e-15);
  CHECK(p[1].real() == doctest::Approx(2.0 - 2.0 * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("p_m: m = 2 closed forms") {
  const auto p1 = p_m1(2.0, 4);
  const auto p2 = p_m(2.0, 2, 4, p1);
  // int dt / (t - 2)^2 = [-1 / (t - 2)] = 1 - 1/3.
  CHECK(p2[0].real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const cplx i(0.0, 1.0);
  const auto q1 = p_m1(i, 4);
  const auto q2 = p_m(i, 2, 4, q1);
  // [-1 / (t - i)] from -1 to 1 = -(1 + i)/2 + (-1 + i)/2 = -1.
  CHECK(std::abs(q2[0] - cplx(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("p_m1: recurrence identity holds to round-off") {
  const cplx z(0.3, 0.05);
  const auto p = p_m1(z, 16);
  for (int k = 1; k < 16; ++k) {
    const double rhs = (k % 2 == 1) ? 2.0 / k : 0.0;
    CHECK(std::abs(p[k] - z * p[k - 1] - rhs) < 1e-14 * (1.0 + std::abs(p[k])));
  }
}

TEST_CASE("p and q against the oracle at sample points") {
  // [DERIVED] long-double sinh-substituted Gauss-Legendre reference.
  for (const cplx z : {cplx(0.3, 0.05), cplx(0.2, 0.1), cplx(0.0, 0.8), cplx(-0.95, 1e-5), cplx(1.3, -0.2)}) {
    const int n = 16;
    const auto ref = oracle::monomials_2d(z, n);
    const auto p1 = p_m1(z, n + 1);
    const auto p2 = p_m(z, 2, n, std::span<const cplx>(p1).first(n));
    const auto p3 = p_m(z, 3, n, p2);
    const auto q = q_log(z, n, p1);
    for (int k = 0; k < n; ++k) {
      // Errors relative to the kernel scale int |K|.
      CHECK(rel(p1[k], ref.p1[k], ref.p1_abs[0]) < 1e-12);
      CHECK(rel(p2[k], ref.p2[k], ref.p2_abs[0]) < 1e-12);
      CHECK(rel(q[k], ref.q[k], ref.q_abs[0]) < 1e-12);
    }
    // m = 3 through p3 = d/dz p2 / 2; check the first entry in closed form.
    const cplx exact3 = (std::pow(1.0 - z, -2.0) - std::pow(-1.0 - z, -2.0)) / -2.0;
    CHECK(std::abs(p3[0] - exact3) < 1e-13 * std::abs(exact3));
  }
}

TEST_CASE("far singularities lose digits like rho^k") {
  // Upward recurrences are only used inside the near region; at z = 2i
  // (rho ~ 4.2) the error is still small but above round-off.
  const cplx z(0.0, 2.0);
  const auto ref = oracle::monomials_2d(z, 16);
  const auto p1 = p_m1(z, 16);
  const auto p2 = p_m(z, 2, 16, p1);
  for (int k = 0; k < 16; ++k) {
    CHECK(rel(p1[k], ref.p1[k], ref.p1_abs[0]) < 1e-10);
    CHECK(rel(p2[k], ref.p2[k], ref.p2_abs[0]) < 1e-10);
  }
}

TEST_CASE("q_log: branch at real z > 1 is the limit from above") {
  // With z = x + 0i, log(t - z) is evaluated on the cut with imaginary part
  // -pi, the limit as Im z -> 0+. The real parts are the real integrals.
  const auto p1 = p_m1(3.0, 9);
  const auto q = q_log(3.0, 8, p1);
  for (int k = 1; k <= 8; ++k) {
    const double moment = (k % 2 == 1) ? 2.0 / k : 0.0;
    CHECK(std::abs(q[k - 1].imag() + pi * moment) < 1e-14);
  }
  const double re1 = (4.0 * std::log(4.0) - 4.0) - (2.0 * std::log(2.0) - 2.0);
  CHECK(q[0].real() == doctest::Approx(re1).epsilon(1e-14));

  const auto p2 = p_m1(2.0, 2);
  const auto q2 = q_log(2.0, 1, p2);
  const double re2 = (3.0 * std::log(3.0) - 3.0) - (1.0 * std::log(1.0) - 1.0);
  CHECK(q2[0].real() == doctest::Approx(re2).epsilon(1e-14));
  CHECK(q2[0].imag() == doctest::Approx(-2.0 * pi).epsilon(1e-14));

  // [DERIVED] agrees with the oracle just above the axis.
  const auto ref = oracle::monomials_2d(cplx(2.0, 1e-9), 1);
  CHECK(rel(q2[0], ref.q[0], ref.q_abs[0]) < 1e-8);
}

TEST_CASE("conjugate symmetry with zero winding") {
  const cplx z(0.4, 0.07);
  const auto a = p_m1(z, 16), b = p_m1(std::conj(z), 16);
  for (int k = 0; k < 16; ++k) CHECK(std::abs(b[k] - std::conj(a[k])) < 1e-13 * (1.0 + std::abs(a[k])));
}

TEST_CASE("recurrences reject points on the interval") {
  CHECK_THROWS_AS(p_m1(0.5, 4), std::domain_error);
  const auto lower = p_m1(2.0, 4);
  CHECK_THROWS_AS(p_m(0.0, 2, 4, lower), std::domain_error);
}

TEST_CASE("winding_number") {
  ParamCurve line;
  line.g = [](double t) { return Vec3{t, 0.0, 0.0}; };
  line.dg = [](double) { return Vec3{1.0, 0.0, 0.0}; };
  const Panel flat = build_panel(line, -1.0, 1.0, 16);
  for (const cplx z : {cplx(0.0, 0.1), cplx(0.5, -0.3), cplx(3.0, 0.0)}) CHECK(winding_number(flat, z) == 0);

  // [DERIVED] argument-increment oracle along the closed loop panel + reversed chord.
  const Panel par = build_panel(apps::parabola_curve(0.6), -1.0, 1.0, 16);
  auto loop_winding = [&](cplx z) {
    double total = 0.0;
    cplx prev = cplx(-1.0, 0.6) - z;
    const int m = 4000;
    for (int i = 1; i <= m; ++i) {
      const double t = -1.0 + 2.0 * i / m;
      const cplx cur = cplx(t, 0.6 * t * t) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
    for (int i = 1; i <= m; ++i) {
      const double t = 1.0 - 2.0 * i / m;
      const cplx cur = cplx(t, 0.6) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
  };
  for (const cplx z : {cplx(0.0, 0.5), cplx(0.3, 0.2), cplx(0.0, -0.2), cplx(0.0, 0.9), cplx(5.0, 5.0)}) {
    CHECK(winding_number(par, z) == loop_winding(z));
  }
  CHECK(winding_number(par, cplx(0.0, 0.5)) != 0);
  CHECK_THROWS_AS(winding_number(par, cplx(0.5, 0.15)), std::domain_error);
}
