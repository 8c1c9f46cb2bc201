#include "linequad/recur3d.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace linequad {

namespace {

// The recurrences run in extended precision: upward recurrences amplify
// round-off by up to rho(t0)^k, and the extra mantissa bits keep the rounded
// double results accurate across the whole near-evaluation region.
using ext = long double;

// Tables built once from binomial-series recurrences (no factorials).
struct SeriesTables {
  std::array<ext, s1_terms> s1{};  // sqrt(1 + x^2) - 1 = sum_{n>=1} s1[n-1] x^(2n)
  std::array<ext, s3_terms> s3{};  // binom(-1/2, n + 1)
  std::array<ext, s5_terms> s5{};  // ((2 + 3x^2)(1 + x^2)^(-3/2)) coefficient n + 2, over 3
  std::array<double, s1_terms> s1d{};
  std::array<double, s3_terms> s3d{};
  std::array<double, s5_terms> s5d{};

  SeriesTables() {
    // binom(1/2, n)
    ext b = 1.0L;
    for (int n = 1; n <= s1_terms; ++n) {
      b *= (0.5L - (n - 1)) / n;
      s1[n - 1] = b;
    }
    // binom(-1/2, n)
    b = 1.0L;
    for (int n = 1; n <= s3_terms; ++n) {
      b *= (-0.5L - (n - 1)) / n;
      s3[n - 1] = b;
    }
    // a_n = 2 binom(-3/2, n) + 3 binom(-3/2, n - 1)
    ext cur = -1.5L;  // binom(-3/2, 1)
    for (int n = 2; n < s5_terms + 2; ++n) {
      const ext next = cur * (-1.5L - (n - 1)) / n;  // binom(-3/2, n)
      s5[n - 2] = (2.0L * next + 3.0L * cur) / 3.0L;
      cur = next;
    }
    for (int i = 0; i < s1_terms; ++i) s1d[i] = static_cast<double>(s1[i]);
    for (int i = 0; i < s3_terms; ++i) s3d[i] = static_cast<double>(s3[i]);
    for (int i = 0; i < s5_terms; ++i) s5d[i] = static_cast<double>(s5[i]);
  }
};

const SeriesTables& tables() {
  static const SeriesTables t;
  return t;
}

void check_root(cplx t0) {
  if (t0.imag() == 0.0 && std::abs(t0.real()) <= 1.0)
    throw std::domain_error("recur3d: root on [-1, 1]");
}

// Horner in x2 over a coefficient table.
template <size_t N>
ext horner(const std::array<ext, N>& c, ext x2) {
  ext acc = 0.0L;
  for (size_t i = N; i-- > 0;) acc = acc * x2 + c[i];
  return acc;
}

// Antiderivative of |t - t0|^-3 at s = t - tr minus its constant sign(s) / ti^2.
ext s3_tail(ext s, ext ti) {
  const ext x2 = (ti / s) * (ti / s);
  return std::fabs(s) / (s * s * s) * horner(tables().s3, x2);
}

// Antiderivative of |t - t0|^-5 at s minus its constant 2 sign(s) / (3 ti^4).
ext s5_tail(ext s, ext ti) {
  const ext x2 = (ti / s) * (ti / s);
  const ext s2 = s * s;
  return std::fabs(s) / (s2 * s2 * s) * horner(tables().s5, x2);
}

struct ExtGeom {
  ext tr, ti, b, c, d, u1, u2;
};

ExtGeom ext_geom(cplx t0) {
  ExtGeom g;
  g.tr = t0.real();
  g.ti = std::fabs(static_cast<ext>(t0.imag()));
  g.b = -2.0L * g.tr;
  g.d = g.ti * g.ti;
  g.c = g.tr * g.tr + g.d;
  g.u1 = std::hypot(1.0L + g.tr, g.ti);
  g.u2 = std::hypot(1.0L - g.tr, g.ti);
  return g;
}

ext p1_first(const ExtGeom& g) {
  const ext a = std::fabs(g.tr);
  const ext ti = g.ti;
  const ext upper = std::log(1.0L + a + std::sqrt((1.0L + a) * (1.0L + a) + g.d));
  ext lower_arg;
  if (4.0L * ti < 1.0L - a) {
    const ext x = ti / (1.0L - a);
    lower_arg = (1.0L - a) * x * x * horner(tables().s1, x * x);
  } else {
    lower_arg = -1.0L + a + std::sqrt((a - 1.0L) * (a - 1.0L) + g.d);
  }
  return upper - std::log(lower_arg);
}

constexpr int max_recurrence_length = 128;

}  // namespace

RootPairGeom RootPairGeom::from(cplx t0) {
  RootPairGeom g;
  g.tr = t0.real();
  g.ti = std::abs(t0.imag());
  g.b = -2.0 * g.tr;
  g.c = g.tr * g.tr + g.ti * g.ti;
  g.d = g.ti * g.ti;
  g.u1 = std::hypot(1.0 + g.tr, g.ti);
  g.u2 = std::hypot(1.0 - g.tr, g.ti);
  return g;
}

bool in_endpoint_cone(cplx t0, double threshold) {
  const double a = std::abs(t0.real());
  if (a <= 1.0) return false;
  return std::abs(t0.imag()) / (a - 1.0) < threshold;
}

bool in_rhombus(cplx t0) { return 4.0 * std::abs(t0.imag()) < 1.0 - std::abs(t0.real()); }

std::span<const double> s1_coefficients() { return tables().s1d; }
std::span<const double> s3_coefficients() { return tables().s3d; }
std::span<const double> s5_coefficients() { return tables().s5d; }

void pvectors_into(cplx t0, int n, double* p1, double* p3, double* p5) {
  check_root(t0);
  if (n <= 0) return;
  if (n > max_recurrence_length) throw std::invalid_argument("pvectors_into: n too large");
  if (p5 && !p3) throw std::invalid_argument("pvectors_into: p5 requires p3");
  const ExtGeom g = ext_geom(t0);
  const ext hb = 0.5L * g.b;
  std::array<ext, max_recurrence_length> q1, q3, q5;

  q1[0] = p1_first(g);
  if (n > 1) q1[1] = g.u2 - g.u1 - hb * q1[0];
  for (int k = 2; k < n; ++k) {
    const ext sign = (k % 2 == 1) ? 1.0L : -1.0L;  // (-1)^(k-1)
    q1[k] = (g.u2 - sign * g.u1 - (2 * k - 1) * hb * q1[k - 1] - (k - 1) * g.c * q1[k - 2]) / k;
  }
  for (int k = 0; k < n; ++k) p1[k] = static_cast<double>(q1[k]);
  if (!p3) return;

  if (in_endpoint_cone(t0, s3_cone)) {
    q3[0] = s3_tail(1.0L - g.tr, g.ti) - s3_tail(-1.0L - g.tr, g.ti);
  } else {
    q3[0] = ((g.b + 2.0L) / g.u2 - (g.b - 2.0L) / g.u1) / (2.0L * g.d);
  }
  if (n > 1) q3[1] = 1.0L / g.u1 - 1.0L / g.u2 - hb * q3[0];
  for (int k = 2; k < n; ++k) q3[k] = q1[k - 2] - g.b * q3[k - 1] - g.c * q3[k - 2];
  for (int k = 0; k < n; ++k) p3[k] = static_cast<double>(q3[k]);
  if (!p5) return;

  const ext u13 = g.u1 * g.u1 * g.u1, u23 = g.u2 * g.u2 * g.u2;
  if (in_endpoint_cone(t0, s5_cone)) {
    q5[0] = s5_tail(1.0L - g.tr, g.ti) - s5_tail(-1.0L - g.tr, g.ti);
  } else {
    q5[0] = ((g.b + 2.0L) / (2.0L * u23) - (g.b - 2.0L) / (2.0L * u13) + 2.0L * q3[0]) / (3.0L * g.d);
  }
  if (n > 1) q5[1] = 1.0L / (3.0L * u13) - 1.0L / (3.0L * u23) - hb * q5[0];
  for (int k = 2; k < n; ++k) q5[k] = q3[k - 2] - g.b * q5[k - 1] - g.c * q5[k - 2];
  for (int k = 0; k < n; ++k) p5[k] = static_cast<double>(q5[k]);
}

std::vector<double> pvec_m1(cplx t0, int n) {
  std::vector<double> p1(n);
  pvectors_into(t0, n, p1.data(), nullptr, nullptr);
  return p1;
}

std::vector<double> pvec_m3(cplx t0, int n, std::span<const double> p1) {
  if (static_cast<int>(p1.size()) < n) throw std::invalid_argument("pvec_m3: p1 too short");
  std::vector<double> p1c(p1.begin(), p1.begin() + n), p3(n);
  pvectors_into(t0, n, p1c.data(), p3.data(), nullptr);
  return p3;
}

std::vector<double> pvec_m5(cplx t0, int n, std::span<const double> p3) {
  if (static_cast<int>(p3.size()) < n) throw std::invalid_argument("pvec_m5: p3 too short");
  std::vector<double> p1(n), p3c(n), p5(n);
  pvectors_into(t0, n, p1.data(), p3c.data(), p5.data());
  return p5;
}

PVectors pvectors(cplx t0, int n, int max_m) {
  PVectors v;
  v.p1.resize(n);
  if (max_m >= 3) v.p3.resize(n);
  if (max_m >= 5) v.p5.resize(n);
  pvectors_into(t0, n, v.p1.data(), max_m >= 3 ? v.p3.data() : nullptr,
                max_m >= 5 ? v.p5.data() : nullptr);
  return v;
}

}  // namespace linequad
