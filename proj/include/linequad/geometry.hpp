#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "linequad/types.hpp"

namespace linequad {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int max_gauss_order = 64;
/// Root-finding expansions are truncated to this many Legendre terms.
inline constexpr int max_fit_terms = 16;

/// Cached n-point rule, 1 <= n <= 64. Throws std::invalid_argument otherwise.
const GaussRule& gauss_legendre(int n);

// ---------------------------------------------------------------------------
// Legendre expansions
// ---------------------------------------------------------------------------

/// All n Legendre coefficients of the interpolant through samples at the
/// n-point Gauss-Legendre nodes. Uses discrete orthogonality of the rule,
/// which coincides with interpolation at those nodes.
std::vector<double> legendre_coefficients(std::span<const double> samples);
std::vector<cplx> legendre_coefficients(std::span<const cplx> samples);

/// Interpolatory coefficients truncated to min(n, 16) terms.
std::vector<double> legendre_fit(std::span<const double> samples);
std::vector<cplx> legendre_fit(std::span<const cplx> samples);

/// Value of sum_k c_k P_k(t) for real t.
double legendre_eval(std::span<const double> coefs, double t);

/// Value and derivative of sum_k c_k P_k(t), analytically continued to complex t.
struct ValueAndDerivative {
  cplx value;
  cplx derivative;
};
ValueAndDerivative eval_poly_complex(std::span<const double> coefs, cplx t);
ValueAndDerivative eval_poly_complex(std::span<const cplx> coefs, cplx t);

/// P_0..P_{n-1} and their derivatives at complex t.
void legendre_basis(cplx t, int n, cplx* p, cplx* dp);

/// Coefficients of the derivative series.
std::vector<double> legendre_derivative(std::span<const double> coefs);

// ---------------------------------------------------------------------------
// Bernstein ellipses
// ---------------------------------------------------------------------------

/// Elliptical radius of the Bernstein ellipse through t; 1 on [-1, 1].
double bernstein_radius(cplx t);

/// Radius beyond which n-point Gauss-Legendre is expected to reach relative error eps.
double rho_crit(double eps, int n);

// ---------------------------------------------------------------------------
// Curves and panels
// ---------------------------------------------------------------------------

/// Smooth parameterized curve in R^2 (z = 0) or R^3.
struct ParamCurve {
  int dim = 2;
  std::function<Vec3(double)> g;
  std::function<Vec3(double)> dg;
  /// Optional second derivative; panels fall back to spectral differentiation.
  std::function<Vec3(double)> d2g;
  double t_begin = -1.0;
  double t_end = 1.0;
  bool periodic = false;
};

/// One Gauss-Legendre panel of a curve. Derivatives are with respect to the
/// standard parameter t in [-1, 1] of the panel.
struct Panel {
  int dim = 2;
  int n = 0;
  double a = -1.0;  ///< parent parameter interval
  double b = 1.0;
  std::vector<double> t;
  std::vector<double> w;
  std::vector<Vec3> y;
  std::vector<Vec3> dy;
  std::vector<Vec3> ddy;
  std::vector<double> speed;
  /// Legendre coefficients of each coordinate of y and dy, min(n, 16) terms.
  std::array<std::vector<double>, 3> coef_y;
  std::array<std::vector<double>, 3> coef_dy;
  double h = 0.0;
  Vec3 end_lo;  ///< g(-1)
  Vec3 end_hi;  ///< g(+1)
  std::optional<cplx> schwarz;
  /// Ball containing all nodes; |x - node_center| - node_radius bounds the node distance below.
  Vec3 node_center;
  double node_radius = 0.0;

  cplx tau(int j) const { return to_complex(y[j]); }
  cplx dtau(int j) const { return to_complex(dy[j]); }
  cplx ddtau(int j) const { return to_complex(ddy[j]); }

  /// Complexified parameterization gamma(t) = g1(t) + i g2(t) from the Legendre fit.
  ValueAndDerivative gamma(cplx t) const;
};

Panel build_panel(const ParamCurve& curve, double a, double b, int n);

/// Panel from node data at the n-point Gauss-Legendre nodes.
Panel panel_from_nodes(int dim, std::vector<Vec3> y, std::vector<Vec3> dy, std::vector<Vec3> ddy,
                       Vec3 end_lo, Vec3 end_hi, double a = -1.0, double b = 1.0);

/// Maps the panel's complex endpoints to -1 and +1: s(tau) = (tau - origin) / scale.
struct ComplexPanelFrame {
  cplx scale;
  cplx origin;

  cplx forward(cplx tau) const { return (tau - origin) / scale; }
};

ComplexPanelFrame endpoint_frame(const Panel& panel);

/// Root of the continued derivative gamma' nearest t = 0, if Newton finds one.
std::optional<cplx> schwarz_preimage(const Panel& panel, int max_iter = 30);

/// Recursive bisection until every panel is resolved to eps_panel, followed by
/// a 2:1 level restriction (cyclic for periodic curves).
std::vector<Panel> adaptive_panelize(const ParamCurve& curve, double eps_panel, int n,
                                     int max_depth = 30);

// ---------------------------------------------------------------------------
// Resampling
// ---------------------------------------------------------------------------

/// Barycentric weights of arbitrary distinct nodes, normalized to max |w| = 1.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Dense m x n matrix interpolating from the n-point to the m-point Gauss-Legendre nodes.
struct InterpMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  double operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

/// Cached Gauss-Legendre resampling matrix.
const InterpMatrix& gauss_interp_matrix(int n, int m);

template <class T>
std::vector<T> resample(const InterpMatrix& L, std::span<const T> samples) {
  std::vector<T> out(L.rows, T{});
  for (int i = 0; i < L.rows; ++i) {
    T acc{};
    for (int j = 0; j < L.cols; ++j) acc += L(i, j) * samples[j];
    out[i] = acc;
  }
  return out;
}

/// Panel with m nodes whose geometry is interpolated componentwise from the
/// n-node data. Legendre fits, arc length and Schwarz preimage are inherited.
Panel upsample_panel(const Panel& panel, int m);

template <class T>
std::vector<T> upsample_samples(int n, std::span<const T> samples, int m) {
  if (m == n) return {samples.begin(), samples.end()};
  return resample(gauss_interp_matrix(n, m), samples);
}

}  // namespace linequad
