#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "linequad/apps.hpp"
#include "linequad/geometry.hpp"
#include "linequad/rootfind.hpp"

using namespace linequad;

namespace {

ParamCurve line_2d() {
  ParamCurve c;
  c.g = [](double t) { return Vec3{t, 0.0, 0.0}; };
  c.dg = [](double) { return Vec3{1.0, 0.0, 0.0}; };
  return c;
}

ParamCurve line_3d() {
  ParamCurve c = line_2d();
  c.dim = 3;
  return c;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Point at distance d from g(t) in a normal direction selected by angle phi.
Vec3 offset_point(const ParamCurve& c, double t, double d, double phi) {
  const Vec3 p = c.g(t);
  Vec3 tan = c.dg(t);
  tan = (1.0 / norm(tan)) * tan;
  Vec3 e1 = cross(tan, Vec3{0.3, 0.5, 0.8});
  e1 = (1.0 / norm(e1)) * e1;
  const Vec3 e2 = cross(tan, e1);
  return p + d * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

}  // namespace

TEST_CASE("newton_preimage_2d: straight panel is the identity map") {
  const Panel p = build_panel(line_2d(), -1.0, 1.0, 16);
  QuadConfig cfg;
  for (const cplx z : {cplx(0.3, 0.2), cplx(-0.9, 1e-6), cplx(1.4, -0.5)}) {
    const Preimage pre = newton_preimage_2d(p, z, cfg);
    REQUIRE(pre.converged);
    // Round-off in the 16-term fit grows like rho^15 off the real line.
    const double rho = bernstein_radius(z);
    CHECK(std::abs(pre.t0 - z) < 1e-14 + 1e-15 * std::pow(rho, 15));
    CHECK(pre.rho == doctest::Approx(rho).epsilon(1e-9));
  }
}

TEST_CASE("newton_preimage_2d: parabola round trip") {
  const double k = 0.4;
  const Panel p = build_panel(apps::parabola_curve(k), -1.0, 1.0, 16);
  QuadConfig cfg;
  for (const cplx t0 : {cplx(0.3, 0.2), cplx(-0.7, 0.05), cplx(0.1, -0.3), cplx(0.95, 1e-4)}) {
    const cplx zeta = t0 + cplx(0.0, k) * t0 * t0;
    const Preimage pre = newton_preimage_2d(p, zeta, cfg);
    REQUIRE(pre.converged);
    CHECK(pre.method == RootMethod::Newton);
    CHECK(std::abs(pre.t0 - t0) < 1e-13);
    CHECK(pre.residual < 1e-14);
  }
}

TEST_CASE("all_roots_companion: Legendre series with known roots") {
  // P3 = (5t^3 - 3t) / 2.
  const std::vector<double> p3{0.0, 0.0, 0.0, 1.0};
  auto roots = all_roots_companion(std::span<const double>(p3));
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + std::sqrt(0.6)) < 1e-14);
  CHECK(std::abs(roots[1]) < 1e-14);
  CHECK(std::abs(roots[2] - std::sqrt(0.6)) < 1e-14);

  // t^2 - 1 = (2/3) P2 - (2/3) P0, with trailing zeros trimmed.
  const std::vector<cplx> q{-2.0 / 3.0, 0.0, 2.0 / 3.0, 0.0, 0.0};
  roots = all_roots_companion(std::span<const cplx>(q));
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] + 1.0) < 1e-14);
  CHECK(std::abs(roots[1] - 1.0) < 1e-14);

  const std::vector<double> constant{2.0, 0.0};
  CHECK_THROWS_AS(all_roots_companion(std::span<const double>(constant)), std::invalid_argument);
}

TEST_CASE("companion_preimage_2d agrees with Newton") {
  const Panel p = build_panel(apps::parabola_curve(0.4), -1.0, 1.0, 16);
  QuadConfig cfg;
  const cplx t0(0.2, 0.35);
  const cplx zeta = t0 + cplx(0.0, 0.4) * t0 * t0;
  const Preimage a = newton_preimage_2d(p, zeta, cfg);
  const Preimage b = companion_preimage_2d(p, zeta);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(b.method == RootMethod::Companion);
  CHECK(std::abs(a.t0 - b.t0) < 1e-12);
}

TEST_CASE("root_3d: straight line has the closed-form root a + i r") {
  const Panel p = build_panel(line_3d(), -1.0, 1.0, 16);
  QuadConfig cfg;
  for (const Vec3 x : {Vec3{0.3, 0.1, 0.2}, Vec3{-0.8, 1e-4, 0.0}, Vec3{0.0, 0.0, 0.9}}) {
    const Preimage pre = root_3d(p, x, cfg);
    REQUIRE(pre.converged);
    const double r = std::hypot(x.y, x.z);
    const double rho = bernstein_radius(cplx(x.x, r));
    CHECK(std::abs(pre.t0 - cplx(x.x, r)) < 1e-14 + 1e-15 * std::pow(rho, 15));
    CHECK(pre.t0.imag() >= 0.0);
  }
}

TEST_CASE("root_3d: squiggle panel roots are accurate and match the comrade matrix") {
  const ParamCurve c = apps::squiggle_curve();
  const double a = 0.30, b = 0.34;
  const Panel p = build_panel(c, a, b, 16);
  QuadConfig cfg;
  for (const double d : {1e-2, 1e-3, 1e-5}) {
    for (const double s : {-0.6, 0.1, 0.8}) {
      const double t = a + (s + 1.0) * (b - a) / 2.0;
      const Vec3 x = offset_point(c, t, d * p.h, 0.7 + s);
      const Preimage pre = root_3d(p, x, cfg);
      REQUIRE(pre.converged);
      // Root sits next to the real parameter with Im t0 ~ distance / speed.
      CHECK(std::abs(pre.t0.real() - s) < 1e-2);
      CHECK(pre.residual < 1e-12 * p.h * p.h);
      const auto all = roots_3d_companion(p, x);
      double best = 1e300;
      for (const cplx& r : all) best = std::min(best, std::abs(cplx(r.real(), std::abs(r.imag())) - pre.t0));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("initial_guess_3d lies in the upper half-plane") {
  const Panel p = build_panel(line_3d(), -1.0, 1.0, 16);
  const cplx g = initial_guess_3d(p, Vec3{0.2, 0.3, 0.4});
  CHECK(g.imag() > 0.0);
  CHECK(std::abs(g - cplx(0.2, 0.5)) < 1e-12);
}

TEST_CASE("squared_distance_poly vanishes at the root and matches R^2 on the real line") {
  const Panel p = build_panel(apps::squiggle_curve(), 0.5, 0.53, 16);
  const Vec3 x = offset_point(apps::squiggle_curve(), 0.515, 0.05 * p.h, 1.0);
  for (const double t : {-1.0, -0.3, 0.4, 1.0}) {
    const ValueAndDerivative v = squared_distance_poly(p, x, cplx(t, 0.0));
    const double tt = 0.5 + (t + 1.0) * 0.015;
    const double exact = norm2(apps::squiggle_curve().g(tt) - x);
    CHECK(std::abs(v.value.real() - exact) < 1e-12 * p.h * p.h);
  }
  QuadConfig cfg;
  const Preimage pre = root_3d(p, x, cfg);
  REQUIRE(pre.converged);
  CHECK(std::abs(squared_distance_poly(p, x, pre.t0).value) < 1e-13 * p.h * p.h);
}

TEST_CASE("classify_target: distance and Bernstein-radius tests") {
  const Panel p = build_panel(line_2d(), -1.0, 1.0, 16);
  QuadConfig cfg;
  cfg.rho_eps = 1.8;

  // rho(0.3 + 0.4i) ~ 1.4995 < 1.8.
  auto c = classify_target(p, from_complex({0.3, 0.4}), cfg);
  CHECK(c.near_candidate);
  CHECK(c.kind == TargetKind::Special);
  REQUIRE(c.preimage);
  CHECK(c.preimage->rho == doctest::Approx(1.4995).epsilon(1e-4));

  // rho(0.9i) ~ 2.245 >= 1.8: near candidate but outside the ellipse.
  c = classify_target(p, from_complex({0.0, 0.9}), cfg);
  CHECK(c.near_candidate);
  CHECK(c.kind == TargetKind::Far);

  // Ten panel lengths away: rejected before any root finding.
  c = classify_target(p, from_complex({0.0, 10.0 * p.h}), cfg);
  CHECK_FALSE(c.near_candidate);
  CHECK_FALSE(c.preimage.has_value());
  CHECK(c.kind == TargetKind::Far);

  // Upsample-direct band sqrt(rho_eps) <= rho < rho_eps.
  cfg.mode = Upsampling::UpsampleDirect;
  c = classify_target(p, from_complex({0.3, 0.4}), cfg);
  CHECK(c.kind == TargetKind::NearDirectUpsampled);
  c = classify_target(p, from_complex({0.3, 0.05}), cfg);
  CHECK(c.kind == TargetKind::Special);
}

TEST_CASE("classify_target: 3D near and far") {
  const Panel p = build_panel(line_3d(), -1.0, 1.0, 16);
  QuadConfig cfg;
  auto c = classify_target(p, Vec3{0.1, 0.05, 0.05}, cfg);
  CHECK(c.kind == TargetKind::Special);
  c = classify_target(p, Vec3{0.1, 30.0, 0.0}, cfg);
  CHECK(c.kind == TargetKind::Far);
  CHECK_FALSE(c.near_candidate);
}

TEST_CASE("nodes_beyond never rejects a near target") {
  const Panel p = build_panel(apps::squiggle_curve(), 0.1, 0.15, 16);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 x = p.node_center + (3.0 * p.h) * Vec3{u(rng), u(rng), u(rng)};
    if (nodes_beyond(p, x, p.h)) CHECK(min_node_distance(p, x) >= p.h);
  }
}

TEST_CASE("roots_3d_companion: roots near the panel are genuine roots of R~^2") {
  // Long panels have roots of the trimmed fit far from [-1, 1] that are not
  // roots of R~^2; polishing them must not pull them towards the panel.
  const ParamCurve c = apps::squiggle_curve();
  const SourceSet3D src = apps::slender_sources(c, 1e-10, 16);
  int checked = 0;
  for (const double d : {1e-1, 1e-3, 1e-5}) {
    for (const Vec3& x : apps::slender_targets(c, d, 60, 11)) {
      for (const Panel& p : src.panels) {
        if (p.h < 0.5 || min_node_distance(p, x) >= p.h) continue;
        for (const cplx& r : roots_3d_companion(p, x)) {
          if (bernstein_radius(r) >= 2.7) continue;
          ++checked;
          CHECK(std::abs(squared_distance_poly(p, x, r).value) < 1e-10 * p.h * p.h);
        }
      }
    }
  }
  CHECK(checked > 10);
}
