#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "linequad/apps.hpp"
#include "linequad/parallel.hpp"
#include "linequad/refquad.hpp"

namespace linequad::apps {

namespace {

// Parameter of the point on the parabola closest to zeta, and the distance.
std::pair<double, double> closest_point(double k, cplx zeta) {
  auto dist2 = [&](double t) { return std::norm(cplx(t, k * t * t) - zeta); };
  const int samples = 400;
  double best_t = -1.0, best = dist2(-1.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = -1.0 + 2.0 * i / samples;
    const double d = dist2(t);
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  double lo = std::max(-1.0, best_t - 2.0 / samples), hi = std::min(1.0, best_t + 2.0 / samples);
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (dist2(m1) < dist2(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double t = 0.5 * (lo + hi);
  return {t, std::sqrt(dist2(t))};
}

}  // namespace

ParabolaOptions default_parabola_options() { return ParabolaOptions{}; }

double parabola_reference(double k, cplx zeta) {
  using LC = std::complex<long double>;
  const long double lk = k;
  const LC z(zeta.real(), zeta.imag());
  auto f = [&](long double t) -> long double {
    const LC g(t, lk * t * t), dg(1.0L, 2.0L * lk * t);
    const long double rho = t * lk * t * t;
    return -std::imag(rho * dg / (g - z));
  };
  const double split = closest_point(k, zeta).first;
  long double total = 0.0L;
  if (split > -1.0) total += gauss_kronrod<long double, long double>(f, -1.0L, split, 1e-17L);
  if (split < 1.0) total += gauss_kronrod<long double, long double>(f, split, 1.0L, 1e-17L);
  return static_cast<double>(total);
}

ErrorGrid demo_parabola(const ParabolaOptions& opt) {
  if (opt.k < 0.0) throw std::invalid_argument("parabola: k must be nonnegative");
  const QuadConfig cfg = QuadConfig::from_tolerance(opt.tol, opt.n, opt.mode);
  SourceSet2D src;
  src.panels.push_back(build_panel(parabola_curve(opt.k), -1.0, 1.0, opt.n));
  std::vector<cplx> dens(opt.n);
  for (int j = 0; j < opt.n; ++j) dens[j] = src.panels[0].y[j].x * src.panels[0].y[j].y;
  src.density.push_back(dens);
  if (opt.mode != Upsampling::None) prepare_fine(src, 2 * opt.n);
  const KernelSplit2D split = laplace_dlp_2d();

  ErrorGrid grid;
  grid.dim = 2;
  grid.nx = opt.grid.nx;
  grid.ny = opt.grid.ny;
  const size_t count = static_cast<size_t>(grid.nx) * grid.ny;
  grid.x.resize(count);
  grid.y.resize(count);
  grid.err.resize(count);
  grid.dist.resize(count);
  std::vector<double> u(count), uref(count);
  parallel_for(count, [&](size_t idx) {
    const int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
    const double x = grid.nx > 1 ? opt.x_lo + (opt.x_hi - opt.x_lo) * i / (grid.nx - 1) : opt.x_lo;
    const double y = grid.ny > 1 ? opt.y_lo + (opt.y_hi - opt.y_lo) * j / (grid.ny - 1) : opt.y_lo;
    const cplx zeta(x, y);
    grid.x[idx] = x;
    grid.y[idx] = y;
    grid.dist[idx] = closest_point(opt.k, zeta).second;
    // Grid points on the curve itself (to rounding) have no defined value.
    if (grid.dist[idx] < 1e-14) {
      u[idx] = uref[idx] = 0.0;
      return;
    }
    u[idx] = near_eval_2d(src, zeta, split, opt.scheme, cfg).real();
    uref[idx] = parabola_reference(opt.k, zeta);
  });
  double umax = 0.0;
  for (double v : uref) umax = std::max(umax, std::abs(v));
  for (size_t i = 0; i < count; ++i) grid.err[i] = std::abs(u[i] - uref[i]) / umax;
  grid.scheme = std::string(to_string(opt.scheme));
  grid.meta = {{"experiment", "parabola"},
               {"k", std::to_string(opt.k)},
               {"n", std::to_string(opt.n)},
               {"mode", std::string(to_string(opt.mode))},
               {"rho_eps", std::to_string(cfg.rho_eps)}};
  return grid;
}

}  // namespace linequad::apps
