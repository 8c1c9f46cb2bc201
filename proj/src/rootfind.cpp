#include "linequad/rootfind.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linequad {

namespace {

std::atomic<long long> g_root_failures{0};
std::atomic<long long> g_companion_triggers{0};

struct ComplexFit {
  std::array<cplx, max_fit_terms> c{};
  int size = 0;

  std::span<const cplx> span() const { return {c.data(), static_cast<size_t>(size)}; }
};

ComplexFit complex_fit(const Panel& panel) {
  ComplexFit fit;
  fit.size = static_cast<int>(panel.coef_y[0].size());
  for (int k = 0; k < fit.size; ++k) fit.c[k] = {panel.coef_y[0][k], panel.coef_y[1][k]};
  return fit;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx upper(cplx z) { return z.imag() < 0.0 ? std::conj(z) : z; }

/// Diagonal similarity scaling by powers of two so that rows and columns have
/// comparable norms; comrade matrices of fast-decaying series otherwise carry
/// a last row many orders of magnitude above the rest.
void balance(Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      if (c + r < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

template <class Coef>
std::vector<cplx> comrade_roots(std::span<const Coef> coefs) {
  double big = 0.0;
  for (const auto& c : coefs) big = std::max(big, std::abs(c));
  int deg = static_cast<int>(coefs.size()) - 1;
  while (deg > 0 && std::abs(coefs[deg]) <= 1e-14 * big) --deg;
  if (deg < 1 || big == 0.0) throw std::invalid_argument("all_roots_companion: constant series");
  std::vector<cplx> c(coefs.begin(), coefs.begin() + deg + 1);
  std::vector<cplx> roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(deg, deg);
    for (int k = 0; k < deg; ++k) {
      if (k > 0) m(k, k - 1) = static_cast<double>(k) / (2 * k + 1);
      if (k + 1 < deg) m(k, k + 1) = static_cast<double>(k + 1) / (2 * k + 1);
    }
    const double alpha = static_cast<double>(deg) / (2 * deg - 1);
    for (int j = 0; j < deg; ++j) m(deg - 1, j) -= alpha * c[j] / c[deg];
    balance(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("all_roots_companion: eigensolver failed");
    for (int k = 0; k < deg; ++k) roots.push_back(solver.eigenvalues()[k]);
  }
  // Polish on the series itself.
  for (cplx& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const auto f = eval_poly_complex(std::span<const cplx>(c), r);
      if (f.derivative == 0.0) break;
      const cplx next = r - f.value / f.derivative;
      const auto g = eval_poly_complex(std::span<const cplx>(c), next);
      if (!finite(next) || std::abs(g.value) >= std::abs(f.value)) break;
      r = next;
    }
  }
  return roots;
}

Preimage finish(cplx t, bool converged, int iterations, RootMethod method, double residual) {
  Preimage p;
  p.t0 = t;
  p.converged = converged;
  p.iterations = iterations;
  p.method = converged ? method : RootMethod::None;
  p.rho = converged ? bernstein_radius(t) : 0.0;
  p.residual = residual;
  return p;
}

Preimage muller_3d(const Panel& panel, const Vec3& x, cplx t_init, int max_iter) {
  auto f = [&](cplx t) { return squared_distance_poly(panel, x, t).value; };
  cplx x0 = t_init + cplx(0.0, 0.05), x1 = t_init - cplx(0.0, 0.05), x2 = t_init;
  cplx f0 = f(x0), f1 = f(x1), f2 = f(x2);
  for (int it = 1; it <= max_iter; ++it) {
    const cplx h1 = x1 - x0, h2 = x2 - x1;
    const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
    const cplx a = (d2 - d1) / (h2 + h1);
    const cplx b = a * h2 + d2;
    const cplx disc = std::sqrt(b * b - 4.0 * a * f2);
    const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    if (den == 0.0) break;
    const cplx dx = -2.0 * f2 / den;
    const cplx x3 = x2 + dx;
    if (!finite(x3)) break;
    x0 = x1; f0 = f1;
    x1 = x2; f1 = f2;
    x2 = x3; f2 = f(x3);
    if (std::abs(dx) < 1e-14 * std::max(1.0, std::abs(x3)) || f2 == 0.0)
      return finish(upper(x2), true, it, RootMethod::Muller, std::abs(f2));
  }
  return finish(upper(x2), false, max_iter, RootMethod::None, std::abs(f2));
}

}  // namespace

std::string_view to_string(RootMethod method) {
  switch (method) {
    case RootMethod::None: return "none";
    case RootMethod::Newton: return "newton";
    case RootMethod::Muller: return "muller";
    case RootMethod::Companion: return "companion";
  }
  return "none";
}

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::Far: return "far";
    case TargetKind::NearDirectUpsampled: return "near-direct";
    case TargetKind::Special: return "special";
  }
  return "far";
}

Preimage newton_preimage_2d(const Panel& panel, cplx zeta, const QuadConfig& cfg) {
  const ComplexFit fit = complex_fit(panel);
  const ComplexPanelFrame frame = endpoint_frame(panel);
  const double res_tol = 1e-14 * std::abs(frame.scale);
  cplx t = frame.forward(zeta);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.newton_max_iter; ++it) {
    const auto f = eval_poly_complex(fit.span(), t);
    const cplx r = f.value - zeta;
    residual = std::abs(r);
    if (residual < res_tol) return finish(t, true, it - 1, RootMethod::Newton, residual);
    if (f.derivative == 0.0) break;
    const cplx dt = r / f.derivative;
    t -= dt;
    if (!finite(t)) break;
    if (std::abs(dt) < 1e-13) {
      residual = std::abs(eval_poly_complex(fit.span(), t).value - zeta);
      return finish(t, true, it, RootMethod::Newton, residual);
    }
  }
  return finish(t, false, cfg.newton_max_iter, RootMethod::None, residual);
}

std::vector<cplx> all_roots_companion(std::span<const cplx> legendre_coefs) {
  return comrade_roots(legendre_coefs);
}

std::vector<cplx> all_roots_companion(std::span<const double> legendre_coefs) {
  std::vector<cplx> c(legendre_coefs.begin(), legendre_coefs.end());
  return comrade_roots(std::span<const cplx>(c));
}

Preimage companion_preimage_2d(const Panel& panel, cplx zeta) {
  ComplexFit fit = complex_fit(panel);
  fit.c[0] -= zeta;
  const auto roots = all_roots_companion(fit.span());
  cplx best = roots.front();
  for (const cplx& r : roots)
    if (bernstein_radius(r) < bernstein_radius(best)) best = r;
  fit.c[0] += zeta;
  const double residual = std::abs(eval_poly_complex(fit.span(), best).value - zeta);
  return finish(best, true, 0, RootMethod::Companion, residual);
}

ValueAndDerivative squared_distance_poly(const Panel& panel, const Vec3& x, cplx t) {
  // One Legendre recurrence shared by the three coordinate series.
  const double* c0 = panel.coef_y[0].data();
  const double* c1 = panel.coef_y[1].data();
  const double* c2 = panel.coef_y[2].data();
  const int n = static_cast<int>(panel.coef_y[0].size());
  cplx g[3] = {c0[0], c1[0], c2[0]};
  cplx dg[3] = {0.0, 0.0, 0.0};
  if (n > 1) {
    g[0] += c0[1] * t; g[1] += c1[1] * t; g[2] += c2[1] * t;
    dg[0] += c0[1]; dg[1] += c1[1]; dg[2] += c2[1];
  }
  static const auto ratios = [] {
    std::array<std::array<double, 2>, max_fit_terms> r{};
    for (int k = 1; k < max_fit_terms; ++k) r[k] = {(2.0 * k + 1.0) / (k + 1.0), k / (k + 1.0)};
    return r;
  }();
  cplx p0 = 1.0, p1 = t, dp0 = 0.0, dp1 = 1.0;
  for (int k = 1; k + 1 < n; ++k) {
    const cplx p2 = ratios[k][0] * (t * p1) - ratios[k][1] * p0;
    const cplx dp2 = dp0 + static_cast<double>(2 * k + 1) * p1;
    g[0] += c0[k + 1] * p2; g[1] += c1[k + 1] * p2; g[2] += c2[k + 1] * p2;
    dg[0] += c0[k + 1] * dp2; dg[1] += c1[k + 1] * dp2; dg[2] += c2[k + 1] * dp2;
    p0 = p1; p1 = p2;
    dp0 = dp1; dp1 = dp2;
  }
  cplx val = 0.0, der = 0.0;
  for (int i = 0; i < 3; ++i) {
    const cplx diff = g[i] - x[i];
    val += diff * diff;
    der += 2.0 * diff * dg[i];
  }
  return {val, der};
}

cplx initial_guess_3d(const Panel& panel, const Vec3& x) {
  int j = -1, k = -1;
  double dj = std::numeric_limits<double>::infinity(), dk = dj;
  for (int i = 0; i < panel.n; ++i) {
    const double di = norm2(panel.y[i] - x);
    if (di < dj) {
      k = j; dk = dj;
      j = i; dj = di;
    } else if (di < dk) {
      k = i; dk = di;
    }
  }
  const Vec3 gjk = panel.y[k] - panel.y[j];
  const double len2 = norm2(gjk);
  const double tj = panel.t[j], tk = panel.t[k];
  const double re = tj + (tk - tj) * dot(x - panel.y[j], gjk) / len2;
  const double r = std::abs(tk - tj) * std::sqrt(dj / len2);
  const double im2 = r * r - (re - tj) * (re - tj);
  return {re, im2 > 0.0 ? std::sqrt(im2) : 0.0};
}

Preimage root_3d(const Panel& panel, const Vec3& x, const QuadConfig& cfg) {
  const cplx t_init = initial_guess_3d(panel, x);
  cplx t = t_init;
  for (int it = 1; it <= cfg.newton_max_iter; ++it) {
    const auto f = squared_distance_poly(panel, x, t);
    if (f.derivative == 0.0) break;
    const cplx dt = f.value / f.derivative;
    t -= dt;
    if (!finite(t)) break;
    if (std::abs(dt) < 1e-13) {
      t = upper(t);
      return finish(t, true, it, RootMethod::Newton, std::abs(squared_distance_poly(panel, x, t).value));
    }
  }
  return muller_3d(panel, x, t_init, cfg.muller_max_iter);
}

std::vector<cplx> roots_3d_companion(const Panel& panel, const Vec3& x) {
  const int terms = static_cast<int>(panel.coef_y[0].size());
  const int npts = 2 * (terms - 1) + 1;
  const GaussRule& rule = gauss_legendre(npts);
  std::vector<double> samples(npts);
  for (int j = 0; j < npts; ++j) samples[j] = squared_distance_poly(panel, x, rule.nodes[j]).value.real();
  const auto coefs = legendre_coefficients(std::span<const double>(samples));
  auto roots = all_roots_companion(std::span<const double>(coefs));
  // Polish on R~^2 itself. Far from [-1, 1] the trimmed fit no longer tracks
  // R~^2, and Newton started from such a root can wander to a point that
  // merely has a smaller |R~^2|; keep a polished root only if it converged.
  double scale = 0.0;
  for (double c : coefs) scale += std::abs(c);
  for (cplx& r : roots) {
    cplx t = r;
    bool converged = false;
    for (int it = 0; it < 8 && !converged; ++it) {
      const auto f = squared_distance_poly(panel, x, t);
      if (f.derivative == 0.0) break;
      const cplx step = f.value / f.derivative;
      if (!finite(step)) break;
      t -= step;
      converged = std::abs(step) <= 1e-14 * (1.0 + std::abs(t));
    }
    if (converged && std::abs(squared_distance_poly(panel, x, t).value) <= 1e-12 * scale) r = t;
  }
  return roots;
}

double min_node_distance(const Panel& panel, const Vec3& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < panel.n; ++j) best = std::min(best, norm2(panel.y[j] - x));
  return std::sqrt(best);
}

TargetClass classify_target(const Panel& panel, const Vec3& x, const QuadConfig& cfg) {
  TargetClass out;
  const double D = cfg.distance_multiplier * panel.h;
  if (nodes_beyond(panel, x, D) || min_node_distance(panel, x) >= D) return out;
  out.near_candidate = true;

  Preimage pre;
  if (panel.dim == 2) {
    const cplx zeta = to_complex(x);
    pre = newton_preimage_2d(panel, zeta, cfg);
    bool trigger = !pre.converged;
    if (panel.schwarz && bernstein_radius(*panel.schwarz) <= 1.1 * cfg.rho_eps) trigger = true;
    if (cfg.companion_fallback && trigger) {
      g_companion_triggers.fetch_add(1, std::memory_order_relaxed);
      pre = companion_preimage_2d(panel, zeta);
      out.companion_used = true;
    }
  } else {
    pre = root_3d(panel, x, cfg);
    if (!pre.converged && cfg.companion_fallback) {
      g_companion_triggers.fetch_add(1, std::memory_order_relaxed);
      const auto roots = roots_3d_companion(panel, x);
      cplx best = roots.front();
      for (const cplx& r : roots)
        if (bernstein_radius(r) < bernstein_radius(best)) best = r;
      pre = finish(upper(best), true, 0, RootMethod::Companion,
                   std::abs(squared_distance_poly(panel, x, best).value));
      out.companion_used = true;
    }
  }
  out.preimage = pre;
  if (!pre.converged) {
    out.root_failed = true;
    g_root_failures.fetch_add(1, std::memory_order_relaxed);
    return out;
  }
  if (pre.rho >= cfg.rho_eps) return out;
  if (cfg.mode == Upsampling::UpsampleDirect && pre.rho >= std::sqrt(cfg.rho_eps)) {
    out.kind = TargetKind::NearDirectUpsampled;
    return out;
  }
  out.kind = TargetKind::Special;
  return out;
}

RootDiagnostics root_diagnostics() {
  return {g_root_failures.load(std::memory_order_relaxed),
          g_companion_triggers.load(std::memory_order_relaxed)};
}

void reset_root_diagnostics() {
  g_root_failures.store(0);
  g_companion_triggers.store(0);
}

}  // namespace linequad
