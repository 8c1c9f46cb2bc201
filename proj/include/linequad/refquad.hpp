#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "linequad/geometry.hpp"
#include "linequad/kernels.hpp"
#include "linequad/specialquad.hpp"

namespace linequad {

/// Cost counters of the adaptive reference; merge per-thread copies with +=.
struct AdaptiveStats {
  long long n_eval = 0;    ///< near-field kernel evaluations
  long long n_interp = 0;  ///< interpolated node samples
  int max_depth = 0;
  double t_eval = 0.0;     ///< seconds
  double t_interp = 0.0;   ///< seconds

  AdaptiveStats& operator+=(const AdaptiveStats& o);
};

/// Second-form barycentric interpolation from parent to child nodes.
template <class T>
std::vector<T> barycentric_interp(std::span<const T> samples, std::span<const double> nodes,
                                  std::span<const double> targets) {
  const std::vector<double> bw = barycentric_weights(nodes);
  std::vector<T> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    T num{};
    double den = 0.0;
    bool exact = false;
    for (size_t j = 0; j < nodes.size(); ++j) {
      const double diff = targets[i] - nodes[j];
      if (diff == 0.0) {
        out[i] = samples[j];
        exact = true;
        break;
      }
      const double c = bw[j] / diff;
      num += c * samples[j];
      den += c;
    }
    if (!exact) out[i] = (1.0 / den) * num;
  }
  return out;
}

/// Per-target adaptive slender-body evaluation: panels closer than their arc
/// length are bisected (data interpolated from the top-level panel) until every
/// piece passes, then summed with plain Gauss-Legendre weights. Near-field
/// counts cover panels whose top level fails the criterion.
Vec3 adaptive_eval_slender(const SourceSet3D& sources, const Vec3& x, double eps,
                           AdaptiveStats& stats, int max_depth = 40);

/// Same scheme for a 2D split kernel.
cplx adaptive_eval_2d(const SourceSet2D& sources, cplx zeta, const KernelSplit2D& split,
                      AdaptiveStats& stats, int max_depth = 40);

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Value may be any vector space over
/// Real. Stops when |K15 - G7| <= max(abs_tol, rel_tol |I|) on each piece.
template <class Real, class Value, class F>
Value gauss_kronrod(F&& f, Real a, Real b, Real rel_tol, Real abs_tol = Real(0),
                    int max_depth = 60);

namespace detail {

template <class Real>
struct Kronrod15 {
  static constexpr long double xk[8] = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr long double wk[8] = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr long double wg[4] = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};
};

template <class Real, class Value>
Real value_abs(const Value& v) {
  using std::abs;
  return static_cast<Real>(abs(v));
}

template <class Real, class Value, class F>
Value gk_recurse(F& f, Real a, Real b, Real rel_tol, Real abs_tol, int depth, int max_depth,
                 Real scale) {
  using K = Kronrod15<Real>;
  const Real c = (a + b) / 2, h = (b - a) / 2;
  Value fc = f(c);
  Value k15 = static_cast<Real>(K::wk[7]) * fc;
  Value g7 = static_cast<Real>(K::wg[3]) * fc;
  for (int i = 0; i < 7; ++i) {
    const Real dx = h * static_cast<Real>(K::xk[i]);
    Value f1 = f(c - dx);
    Value f2 = f(c + dx);
    Value s = f1 + f2;
    k15 += static_cast<Real>(K::wk[i]) * s;
    if (i % 2 == 1) g7 += static_cast<Real>(K::wg[i / 2]) * s;
  }
  k15 = h * k15;
  g7 = h * g7;
  const Real err = value_abs<Real>(Value(k15 - g7));
  const Real floor = 50 * std::numeric_limits<Real>::epsilon() * value_abs<Real>(k15);
  const Real tol = std::max({abs_tol, rel_tol * scale, floor});
  if (err <= tol) return k15;
  if (depth >= max_depth) throw std::runtime_error("gauss_kronrod: depth cap reached");
  return gk_recurse<Real, Value>(f, a, c, rel_tol, abs_tol, depth + 1, max_depth, scale) +
         gk_recurse<Real, Value>(f, c, b, rel_tol, abs_tol, depth + 1, max_depth, scale);
}

}  // namespace detail

template <class Real, class Value, class F>
Value gauss_kronrod(F&& f, Real a, Real b, Real rel_tol, Real abs_tol, int max_depth) {
  // Tolerances are relative to a trapezoidal estimate of int |f|, so pieces
  // where the integrand cancels are not refined beyond what the total needs.
  Real scale = 0;
  const int m = 64;
  const Real h = (b - a) / m;
  for (int i = 0; i <= m; ++i) {
    const Real wt = (i == 0 || i == m) ? Real(0.5) : Real(1);
    // Endpoint singularities are not sampled by the rule itself; skip them.
    const Real v = detail::value_abs<Real>(f(a + h * i));
    if (std::isfinite(v)) scale += wt * h * v;
  }
  return detail::gk_recurse<Real, Value>(f, a, b, rel_tol, abs_tol, 0, max_depth, scale);
}

}  // namespace linequad
