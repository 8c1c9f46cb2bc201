#include <cmath>

#include "linequad/simd/dispatch.hpp"

namespace linequad::simd {

namespace {

void slender_direct_sum(const NodeArrays& a, const double* w, const double* x, double eps,
                        double* out) {
  const double e2 = eps * eps;
  double ox = 0.0, oy = 0.0, oz = 0.0;
  for (int j = 0; j < a.n; ++j) {
    const double rx = x[0] - a.yx[j], ry = x[1] - a.yy[j], rz = x[2] - a.yz[j];
    const double r2 = rx * rx + ry * ry + rz * rz;
    const double ir = 1.0 / std::sqrt(r2);
    const double ir3 = ir / r2, ir5 = ir3 / r2;
    const double rf = rx * a.fx[j] + ry * a.fy[j] + rz * a.fz[j];
    const double cf = w[j] * (ir + 0.5 * e2 * ir3);
    const double cr = w[j] * rf * (ir3 - 1.5 * e2 * ir5);
    ox += cf * a.fx[j] + cr * rx;
    oy += cf * a.fy[j] + cr * ry;
    oz += cf * a.fz[j] + cr * rz;
  }
  out[0] += ox;
  out[1] += oy;
  out[2] += oz;
}

void slender_weighted_sum(const NodeArrays& a, const double* l1, const double* l3, const double* l5,
                          const double* x, double eps, double* out) {
  const double e2 = eps * eps;
  double ox = 0.0, oy = 0.0, oz = 0.0;
  for (int j = 0; j < a.n; ++j) {
    const double rx = x[0] - a.yx[j], ry = x[1] - a.yy[j], rz = x[2] - a.yz[j];
    const double rf = rx * a.fx[j] + ry * a.fy[j] + rz * a.fz[j];
    const double cf = l1[j] + 0.5 * e2 * l3[j];
    const double cr = rf * (l3[j] - 1.5 * e2 * l5[j]);
    ox += cf * a.fx[j] + cr * rx;
    oy += cf * a.fy[j] + cr * ry;
    oz += cf * a.fz[j] + cr * rz;
  }
  out[0] += ox;
  out[1] += oy;
  out[2] += oz;
}

void ssq3d_correct(const double* t, cplx t0, const double* yx, const double* yy, const double* yz,
                   const double* speed, const double* x, int n, double* l1, double* l3, double* l5) {
  const double tr = t0.real(), ti2 = t0.imag() * t0.imag();
  for (int j = 0; j < n; ++j) {
    const double dt = t[j] - tr;
    const double num = dt * dt + ti2;
    const double rx = yx[j] - x[0], ry = yy[j] - x[1], rz = yz[j] - x[2];
    const double q = num / (rx * rx + ry * ry + rz * rz);
    const double s1 = speed[j] * std::sqrt(q);
    l1[j] *= s1;
    if (l3) l3[j] *= s1 * q;
    if (l5) l5[j] *= s1 * q * q;
  }
}

void bp_dual4(const double* x, const double* inv, int n, double* z) {
  for (int k = 0; k + 1 < n; ++k) {
    const double xk = x[k];
    for (int i = n - 1; i > k; --i)
      for (int r = 0; r < 4; ++r) z[4 * i + r] -= xk * z[4 * (i - 1) + r];
  }
  for (int k = n - 2; k >= 0; --k) {
    const double* row = inv + static_cast<size_t>(k) * n;
    for (int i = k + 1; i < n; ++i)
      for (int r = 0; r < 4; ++r) z[4 * i + r] *= row[i];
    for (int i = k; i + 1 < n; ++i)
      for (int r = 0; r < 4; ++r) z[4 * i + r] -= z[4 * (i + 1) + r];
  }
}

cplx cauchy_sum(const double* cre, const double* cim, const double* tre, const double* tim, int n,
                cplx zeta) {
  double sre = 0.0, sim = 0.0;
  for (int j = 0; j < n; ++j) {
    const double dre = tre[j] - zeta.real(), dim = tim[j] - zeta.imag();
    const double inv = 1.0 / (dre * dre + dim * dim);
    sre += (cre[j] * dre + cim[j] * dim) * inv;
    sim += (cim[j] * dre - cre[j] * dim) * inv;
  }
  return {sre, sim};
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{slender_direct_sum, slender_weighted_sum, ssq3d_correct, bp_dual4,
                                 cauchy_sum};
  return table;
}

}  // namespace linequad::simd
