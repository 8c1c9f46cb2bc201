#include "linequad/recur2d.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cmath>
#include <stdexcept>

namespace linequad {

namespace {

void check_off_interval(cplx z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 1.0)
    throw std::domain_error("recurrence: singularity on [-1, 1]");
}

// Recurrences run in extended precision; see recur3d.cpp for the rationale.
using ext = long double;
using cext = std::complex<ext>;

constexpr ext two_pi_l = 6.283185307179586476925286766559005768L;

cext widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(cext z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Principal logs of the endpoint displacements; signed zeros in z carry over.
cext log_hi(cplx z, int winding) {
  return std::log(cext(1.0L - z.real(), -static_cast<ext>(z.imag()))) + cext(0.0L, winding * two_pi_l);
}
cext log_lo(cplx z) { return std::log(cext(-1.0L - z.real(), -static_cast<ext>(z.imag()))); }

constexpr int max_recurrence_length = 130;

}  // namespace

void p1_into(cplx z, int n, int winding, cplx* out) {
  check_off_interval(z);
  if (n <= 0) return;
  // Principal logs give the chord integral exactly: t - z never crosses the
  // branch cut while t runs over [-1, 1].
  const cext zl = widen(z);
  cext p = log_hi(z, winding) - log_lo(z);
  out[0] = narrow(p);
  for (int k = 1; k < n; ++k) {
    p = zl * p + ((k % 2 == 1) ? 2.0L / k : 0.0L);
    out[k] = narrow(p);
  }
}

void pm_into(cplx z, int m, int n, const cplx* lower, cplx* out) {
  check_off_interval(z);
  if (m < 2) throw std::invalid_argument("pm_into: m must be >= 2");
  if (n <= 0) return;
  const cext zl = widen(z);
  const cext a = cext(1.0L - z.real(), -static_cast<ext>(z.imag()));
  const cext b = cext(-1.0L - z.real(), -static_cast<ext>(z.imag()));
  const int e = 1 - m;
  cext p = (std::pow(a, e) - std::pow(b, e)) / static_cast<ext>(e);
  out[0] = narrow(p);
  for (int k = 1; k < n; ++k) {
    p = zl * p + widen(lower[k - 1]);
    out[k] = narrow(p);
  }
}

void q_into(cplx z, int n, int winding, const cplx* p1, cplx* out) {
  check_off_interval(z);
  if (n <= 0) return;
  if (n + 1 > max_recurrence_length) throw std::invalid_argument("q_into: n too large");
  // The p1 inputs are regenerated in extended precision when they match the
  // recurrence (the usual case), so q inherits the same accuracy.
  const cext zl = widen(z);
  const cext hi = log_hi(z, winding), lo = log_lo(z);
  std::array<cext, max_recurrence_length> pe;
  pe[0] = hi - lo;
  for (int k = 1; k <= n; ++k) pe[k] = zl * pe[k - 1] + ((k % 2 == 1) ? 2.0L / k : 0.0L);
  const bool consistent = narrow(pe[n]) == p1[n] && narrow(pe[0]) == p1[0];
  for (int k = 1; k <= n; ++k) {
    const ext sign = (k % 2 == 0) ? 1.0L : -1.0L;  // (-1)^k
    const cext pk = consistent ? pe[k] : widen(p1[k]);
    out[k - 1] = narrow((hi - sign * lo - pk) / static_cast<ext>(k));
  }
}

std::vector<cplx> p_m1(cplx z, int n, int winding) {
  std::vector<cplx> out(std::max(n, 0));
  p1_into(z, n, winding, out.data());
  return out;
}

std::vector<cplx> p_m(cplx z, int m, int n, std::span<const cplx> lower) {
  if (static_cast<int>(lower.size()) < n - 1) throw std::invalid_argument("p_m: lower vector too short");
  std::vector<cplx> out(std::max(n, 0));
  pm_into(z, m, n, lower.data(), out.data());
  return out;
}

std::vector<cplx> q_log(cplx z, int n, std::span<const cplx> p1, int winding) {
  if (static_cast<int>(p1.size()) < n + 1) throw std::invalid_argument("q_log: p1 needs n + 1 entries");
  std::vector<cplx> out(std::max(n, 0));
  q_into(z, n, winding, p1.data(), out.data());
  return out;
}

int winding_number(const Panel& panel, cplx zeta) {
  const ComplexPanelFrame frame = endpoint_frame(panel);
  const cplx z = frame.forward(zeta);
  const cplx lo = frame.forward(to_complex(panel.end_lo));
  const cplx hi = frame.forward(to_complex(panel.end_hi));
  auto point = [&](double t) { return frame.forward(panel.gamma(t).value); };

  // Total argument change of (point - z) along the fitted arc, with
  // adaptive bisection so no step exceeds a quarter turn.
  const double on_curve_tol = 1e-14;
  double total = 0.0;
  std::vector<std::pair<double, cplx>> stack;
  double t_prev = -1.0;
  cplx w_prev = lo - z;
  if (std::abs(w_prev) < on_curve_tol) throw std::domain_error("winding_number: target on panel");
  const int base = 64;
  for (int i = 1; i <= base; ++i) {
    const double t_next = -1.0 + 2.0 * i / base;
    cplx w_next = (i == base ? hi : point(t_next)) - z;
    stack.clear();
    stack.emplace_back(t_next, w_next);
    int guard = 0;
    while (!stack.empty()) {
      auto [t1, w1] = stack.back();
      if (std::abs(w1) < on_curve_tol) throw std::domain_error("winding_number: target on panel");
      const double darg = std::arg(w1 / w_prev);
      if (std::abs(darg) < 0.5 * pi || ++guard > 4000 || t1 - t_prev < 1e-15) {
        if (t1 - t_prev < 1e-15 && std::abs(darg) > 0.5 * pi)
          throw std::domain_error("winding_number: target on panel");
        total += darg;
        t_prev = t1;
        w_prev = w1;
        stack.pop_back();
      } else {
        const double tm = 0.5 * (t_prev + t1);
        stack.emplace_back(tm, point(tm) - z);
      }
    }
  }
  // Closing chord from +1 back to -1: straight segment, single increment.
  const cplx a = hi - z, b = lo - z;
  const double seg = std::abs(std::imag(std::conj(b - a) * a)) / std::abs(b - a);  // distance to line
  const double proj = std::real(std::conj(b - a) * (-a)) / std::norm(b - a);
  if (seg < 1e-14 && proj >= 0.0 && proj <= 1.0) throw std::domain_error("winding_number: target on chord");
  total += std::arg(b / a);
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

}  // namespace linequad
