#include "linequad/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace linequad {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 1; k < n; ++k) {
        long double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    // Final derivative at the converged node.
    long double p0 = 1.0L, p1 = x;
    for (int k = 1; k < n; ++k) {
      long double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0L);
    long double wt = 2.0L / ((1.0L - x * x) * dp * dp);
    rule.nodes[i] = -static_cast<double>(x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(wt);
    rule.weights[n - 1 - i] = static_cast<double>(wt);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Row k holds (2k+1)/2 * w_j * P_k(t_j); applying it to samples gives the coefficients.
struct ProjectionTable {
  int n = 0;
  std::vector<double> data;
};

const ProjectionTable& projection_table(int n) {
  static std::array<std::once_flag, max_gauss_order + 1> flags;
  static std::array<ProjectionTable, max_gauss_order + 1> tables;
  if (n < 1 || n > max_gauss_order)
    throw std::invalid_argument("legendre: sample count out of range: " + std::to_string(n));
  std::call_once(flags[n], [n] {
    const GaussRule& rule = gauss_legendre(n);
    ProjectionTable tab;
    tab.n = n;
    tab.data.assign(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
      const double x = rule.nodes[j];
      double p0 = 1.0, p1 = x;
      for (int k = 0; k < n; ++k) {
        double pk;
        if (k == 0) {
          pk = 1.0;
        } else if (k == 1) {
          pk = x;
        } else {
          pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        tab.data[static_cast<size_t>(k) * n + j] = 0.5 * (2 * k + 1) * rule.weights[j] * pk;
      }
    }
    tables[n] = std::move(tab);
  });
  return tables[n];
}

template <class T>
std::vector<T> coefficients_impl(std::span<const T> samples) {
  const int n = static_cast<int>(samples.size());
  const ProjectionTable& tab = projection_table(n);
  std::vector<T> c(n, T{});
  for (int k = 0; k < n; ++k) {
    T acc{};
    const double* row = tab.data.data() + static_cast<size_t>(k) * n;
    for (int j = 0; j < n; ++j) acc += row[j] * samples[j];
    c[k] = acc;
  }
  return c;
}

template <class T>
std::vector<T> truncate_fit(std::vector<T> c) {
  if (static_cast<int>(c.size()) > max_fit_terms) c.resize(max_fit_terms);
  return c;
}

void set_node_bounds(Panel& p) {
  Vec3 c;
  for (const Vec3& y : p.y) c += y;
  c *= 1.0 / static_cast<double>(p.y.size());
  double r2 = 0.0;
  for (const Vec3& y : p.y) r2 = std::max(r2, norm2(y - c));
  p.node_center = c;
  p.node_radius = std::sqrt(r2);
}

template <class Coef>
ValueAndDerivative eval_complex_impl(std::span<const Coef> c, cplx t) {
  const int n = static_cast<int>(c.size());
  if (n == 0) return {0.0, 0.0};
  cplx p0 = 1.0, p1 = t, dp0 = 0.0, dp1 = 1.0;
  cplx val = c[0] * p0;
  cplx der = 0.0;
  if (n > 1) {
    val += c[1] * p1;
    der += c[1] * dp1;
  }
  for (int k = 1; k + 1 < n; ++k) {
    const cplx p2 = (static_cast<double>(2 * k + 1) * t * p1 - static_cast<double>(k) * p0) /
                    static_cast<double>(k + 1);
    const cplx dp2 = dp0 + static_cast<double>(2 * k + 1) * p1;
    val += c[k + 1] * p2;
    der += c[k + 1] * dp2;
    p0 = p1;
    p1 = p2;
    dp0 = dp1;
    dp1 = dp2;
  }
  return {val, der};
}

bool interval_resolved(const ParamCurve& curve, double a, double b, double eps, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  double tail = 0.0, head = 0.0;
  if (curve.dim == 2) {
    std::vector<cplx> samples(n);
    for (int j = 0; j < n; ++j) {
      const double s = a + half * (rule.nodes[j] + 1.0);
      samples[j] = to_complex(curve.dg(s));
    }
    const auto c = legendre_coefficients(std::span<const cplx>(samples));
    for (const cplx& ck : c) head = std::max(head, std::abs(ck));
    tail = std::max(std::abs(c[n - 1]), std::abs(c[n - 2]));
  } else {
    std::vector<double> samples(n);
    for (int j = 0; j < n; ++j) {
      const double s = a + half * (rule.nodes[j] + 1.0);
      samples[j] = norm(curve.dg(s));
    }
    const auto c = legendre_coefficients(std::span<const double>(samples));
    for (double ck : c) head = std::max(head, std::abs(ck));
    tail = std::max(std::abs(c[n - 1]), std::abs(c[n - 2]));
  }
  return tail < eps * head;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::array<std::once_flag, max_gauss_order + 1> flags;
  static std::array<GaussRule, max_gauss_order + 1> rules;
  if (n < 1 || n > max_gauss_order)
    throw std::invalid_argument("gauss_legendre: order out of range: " + std::to_string(n));
  std::call_once(flags[n], [n] { rules[n] = compute_gauss_legendre(n); });
  return rules[n];
}

std::vector<double> legendre_coefficients(std::span<const double> samples) {
  return coefficients_impl(samples);
}
std::vector<cplx> legendre_coefficients(std::span<const cplx> samples) {
  return coefficients_impl(samples);
}
std::vector<double> legendre_fit(std::span<const double> samples) {
  return truncate_fit(coefficients_impl(samples));
}
std::vector<cplx> legendre_fit(std::span<const cplx> samples) {
  return truncate_fit(coefficients_impl(samples));
}

double legendre_eval(std::span<const double> c, double t) {
  const int n = static_cast<int>(c.size());
  if (n == 0) return 0.0;
  double p0 = 1.0, p1 = t;
  double val = c[0];
  if (n > 1) val += c[1] * t;
  for (int k = 1; k + 1 < n; ++k) {
    const double p2 = ((2 * k + 1) * t * p1 - k * p0) / (k + 1);
    val += c[k + 1] * p2;
    p0 = p1;
    p1 = p2;
  }
  return val;
}

ValueAndDerivative eval_poly_complex(std::span<const double> coefs, cplx t) {
  return eval_complex_impl(coefs, t);
}
ValueAndDerivative eval_poly_complex(std::span<const cplx> coefs, cplx t) {
  return eval_complex_impl(coefs, t);
}

void legendre_basis(cplx t, int n, cplx* p, cplx* dp) {
  if (n <= 0) return;
  p[0] = 1.0;
  dp[0] = 0.0;
  if (n == 1) return;
  p[1] = t;
  dp[1] = 1.0;
  for (int k = 1; k + 1 < n; ++k) {
    p[k + 1] = (static_cast<double>(2 * k + 1) * t * p[k] - static_cast<double>(k) * p[k - 1]) /
               static_cast<double>(k + 1);
    dp[k + 1] = dp[k - 1] + static_cast<double>(2 * k + 1) * p[k];
  }
}

std::vector<double> legendre_derivative(std::span<const double> c) {
  const int n = static_cast<int>(c.size());
  std::vector<double> d(std::max(n, 1), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = k + 1; j < n; j += 2) acc += c[j];
    d[k] = (2 * k + 1) * acc;
  }
  return d;
}

double bernstein_radius(cplx t) {
  if (t.imag() == 0.0 && std::abs(t.real()) <= 1.0) return 1.0;
  const cplx s = std::sqrt(t - 1.0) * std::sqrt(t + 1.0);
  const double r = std::abs(t + s);
  return r >= 1.0 ? r : 1.0 / r;
}

double rho_crit(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("rho_crit: tolerance must lie in (0,1)");
  if (n < 1) throw std::invalid_argument("rho_crit: n must be positive");
  return std::pow(eps, -1.0 / (2.0 * n));
}

ValueAndDerivative Panel::gamma(cplx t) const {
  const auto gx = eval_poly_complex(std::span<const double>(coef_y[0]), t);
  const auto gy = eval_poly_complex(std::span<const double>(coef_y[1]), t);
  const cplx I(0.0, 1.0);
  return {gx.value + I * gy.value, gx.derivative + I * gy.derivative};
}

Panel panel_from_nodes(int dim, std::vector<Vec3> y, std::vector<Vec3> dy, std::vector<Vec3> ddy,
                       Vec3 end_lo, Vec3 end_hi, double a, double b) {
  const int n = static_cast<int>(y.size());
  if (n < 2 || dy.size() != y.size())
    throw std::invalid_argument("panel_from_nodes: need at least two nodes with derivatives");
  const GaussRule& rule = gauss_legendre(n);
  Panel p;
  p.dim = dim;
  p.n = n;
  p.a = a;
  p.b = b;
  p.t = rule.nodes;
  p.w = rule.weights;
  p.y = std::move(y);
  p.dy = std::move(dy);
  p.end_lo = end_lo;
  p.end_hi = end_hi;
  p.speed.resize(n);
  p.h = 0.0;
  for (int j = 0; j < n; ++j) {
    p.speed[j] = norm(p.dy[j]);
    p.h += p.w[j] * p.speed[j];
  }
  std::vector<double> comp(n);
  std::array<std::vector<double>, 3> full_dy;
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < n; ++j) comp[j] = p.y[j][c];
    p.coef_y[c] = legendre_fit(std::span<const double>(comp));
    for (int j = 0; j < n; ++j) comp[j] = p.dy[j][c];
    full_dy[c] = legendre_coefficients(std::span<const double>(comp));
    p.coef_dy[c] = truncate_fit(full_dy[c]);
  }
  if (ddy.size() == static_cast<size_t>(n)) {
    p.ddy = std::move(ddy);
  } else {
    p.ddy.assign(n, Vec3{});
    std::array<std::vector<double>, 3> d2;
    for (int c = 0; c < 3; ++c) d2[c] = legendre_derivative(std::span<const double>(full_dy[c]));
    for (int j = 0; j < n; ++j) {
      p.ddy[j] = {legendre_eval(d2[0], p.t[j]), legendre_eval(d2[1], p.t[j]),
                  legendre_eval(d2[2], p.t[j])};
    }
  }
  set_node_bounds(p);
  if (dim == 2) p.schwarz = schwarz_preimage(p);
  return p;
}

Panel build_panel(const ParamCurve& curve, double a, double b, int n) {
  if (!(a < b)) throw std::invalid_argument("build_panel: degenerate parameter interval");
  if (!curve.g || !curve.dg) throw std::invalid_argument("build_panel: curve needs g and g'");
  const GaussRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  std::vector<Vec3> y(n), dy(n), ddy;
  if (curve.d2g) ddy.resize(n);
  for (int j = 0; j < n; ++j) {
    const double s = a + half * (rule.nodes[j] + 1.0);
    y[j] = curve.g(s);
    dy[j] = half * curve.dg(s);
    if (curve.d2g) ddy[j] = (half * half) * curve.d2g(s);
  }
  return panel_from_nodes(curve.dim, std::move(y), std::move(dy), std::move(ddy), curve.g(a),
                          curve.g(b), a, b);
}

ComplexPanelFrame endpoint_frame(const Panel& panel) {
  const cplx lo = to_complex(panel.end_lo);
  const cplx hi = to_complex(panel.end_hi);
  if (panel.dim != 2) throw std::invalid_argument("endpoint_frame: panel must be planar");
  if (lo == hi) throw std::invalid_argument("endpoint_frame: coincident endpoints");
  return {0.5 * (hi - lo), 0.5 * (hi + lo)};
}

std::optional<cplx> schwarz_preimage(const Panel& panel, int max_iter) {
  if (panel.dim != 2) return std::nullopt;
  const auto& cx = panel.coef_dy[0];
  const auto& cy = panel.coef_dy[1];
  std::vector<cplx> c(cx.size());
  double head = 0.0, rest = 0.0;
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] = {cx[k], cy[k]};
    head = std::max(head, std::abs(c[k]));
    if (k > 0) rest = std::max(rest, std::abs(c[k]));
  }
  if (rest <= 1e-13 * head) return std::nullopt;
  // Round-off in trailing coefficients is amplified far from [-1, 1]; drop it.
  while (c.size() > 2 && std::abs(c.back()) <= 1e-14 * head) c.pop_back();
  cplx t = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const auto f = eval_poly_complex(std::span<const cplx>(c), t);
    if (f.derivative == 0.0) return std::nullopt;
    const cplx dt = f.value / f.derivative;
    t -= dt;
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || std::abs(t) > 1e3) return std::nullopt;
    if (std::abs(dt) < 1e-13 * std::max(1.0, std::abs(t))) return t;
  }
  return std::nullopt;
}

std::vector<Panel> adaptive_panelize(const ParamCurve& curve, double eps_panel, int n,
                                     int max_depth) {
  struct Interval {
    double a, b;
    int depth;
  };
  std::vector<Interval> iv{{curve.t_begin, curve.t_end, 0}};
  // Resolution pass.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Interval> next;
    next.reserve(iv.size() * 2);
    for (const Interval& s : iv) {
      if (interval_resolved(curve, s.a, s.b, eps_panel, n)) {
        next.push_back(s);
        continue;
      }
      if (s.depth >= max_depth)
        throw std::runtime_error("adaptive_panelize: recursion depth cap exceeded");
      const double mid = 0.5 * (s.a + s.b);
      next.push_back({s.a, mid, s.depth + 1});
      next.push_back({mid, s.b, s.depth + 1});
      changed = true;
    }
    iv = std::move(next);
  }
  // Level restriction: neighbouring parameter lengths within a factor of two.
  for (bool changed = true; changed;) {
    changed = false;
    const size_t count = iv.size();
    std::vector<char> split(count, 0);
    const size_t pairs = curve.periodic ? count : count - 1;
    for (size_t i = 0; i < pairs && count > 1; ++i) {
      const size_t j = (i + 1) % count;
      const double li = iv[i].b - iv[i].a;
      const double lj = iv[j].b - iv[j].a;
      if (li > 2.0 * lj * (1.0 + 1e-12)) split[i] = 1;
      if (lj > 2.0 * li * (1.0 + 1e-12)) split[j] = 1;
    }
    std::vector<Interval> next;
    for (size_t i = 0; i < count; ++i) {
      if (!split[i]) {
        next.push_back(iv[i]);
        continue;
      }
      if (iv[i].depth >= max_depth)
        throw std::runtime_error("adaptive_panelize: recursion depth cap exceeded");
      const double mid = 0.5 * (iv[i].a + iv[i].b);
      next.push_back({iv[i].a, mid, iv[i].depth + 1});
      next.push_back({mid, iv[i].b, iv[i].depth + 1});
      changed = true;
    }
    iv = std::move(next);
  }
  std::vector<Panel> panels;
  panels.reserve(iv.size());
  for (const Interval& s : iv) panels.push_back(build_panel(curve, s.a, s.b, n));
  return panels;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double diff = nodes[j] - nodes[k];
      if (diff == 0.0) throw std::invalid_argument("barycentric_weights: repeated node");
      w[j] /= diff;
    }
  }
  double big = 0.0;
  for (double v : w) big = std::max(big, std::abs(v));
  for (double& v : w) v /= big;
  return w;
}

const InterpMatrix& gauss_interp_matrix(int n, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<InterpMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n, m}];
  if (!slot) {
    const GaussRule& src = gauss_legendre(n);
    const GaussRule& dst = gauss_legendre(m);
    const auto bw = barycentric_weights(src.nodes);
    auto L = std::make_unique<InterpMatrix>();
    L->rows = m;
    L->cols = n;
    L->data.assign(static_cast<size_t>(m) * n, 0.0);
    for (int i = 0; i < m; ++i) {
      const double x = dst.nodes[i];
      double* row = L->data.data() + static_cast<size_t>(i) * n;
      int exact = -1;
      double denom = 0.0;
      for (int j = 0; j < n; ++j) {
        const double diff = x - src.nodes[j];
        if (diff == 0.0) {
          exact = j;
          break;
        }
        row[j] = bw[j] / diff;
        denom += row[j];
      }
      if (exact >= 0) {
        std::fill(row, row + n, 0.0);
        row[exact] = 1.0;
      } else {
        for (int j = 0; j < n; ++j) row[j] /= denom;
      }
    }
    slot = std::move(L);
  }
  return *slot;
}

Panel upsample_panel(const Panel& panel, int m) {
  if (m < panel.n) throw std::invalid_argument("upsample_panel: m must be >= n");
  if (m == panel.n) return panel;
  const InterpMatrix& L = gauss_interp_matrix(panel.n, m);
  const GaussRule& rule = gauss_legendre(m);
  Panel p;
  p.dim = panel.dim;
  p.n = m;
  p.a = panel.a;
  p.b = panel.b;
  p.t = rule.nodes;
  p.w = rule.weights;
  p.y = resample(L, std::span<const Vec3>(panel.y));
  p.dy = resample(L, std::span<const Vec3>(panel.dy));
  p.ddy = resample(L, std::span<const Vec3>(panel.ddy));
  p.speed.resize(m);
  for (int j = 0; j < m; ++j) p.speed[j] = norm(p.dy[j]);
  p.coef_y = panel.coef_y;
  p.coef_dy = panel.coef_dy;
  p.h = panel.h;
  p.end_lo = panel.end_lo;
  p.end_hi = panel.end_hi;
  p.schwarz = panel.schwarz;
  set_node_bounds(p);
  return p;
}

}  // namespace linequad
