// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "linequad/simd/dispatch.hpp"

namespace linequad::simd {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void slender_direct_sum(const NodeArrays& a, const double* w, const double* x, double eps,
                        double* out) {
  const double e2 = eps * eps;
  const __m256d vx = _mm256_set1_pd(x[0]), vy = _mm256_set1_pd(x[1]), vz = _mm256_set1_pd(x[2]);
  const __m256d one = _mm256_set1_pd(1.0), he2 = _mm256_set1_pd(0.5 * e2),
                the2 = _mm256_set1_pd(1.5 * e2);
  __m256d ox = _mm256_setzero_pd(), oy = _mm256_setzero_pd(), oz = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= a.n; j += 4) {
    const __m256d rx = _mm256_sub_pd(vx, _mm256_loadu_pd(a.yx + j));
    const __m256d ry = _mm256_sub_pd(vy, _mm256_loadu_pd(a.yy + j));
    const __m256d rz = _mm256_sub_pd(vz, _mm256_loadu_pd(a.yz + j));
    const __m256d r2 = _mm256_fmadd_pd(rz, rz, _mm256_fmadd_pd(ry, ry, _mm256_mul_pd(rx, rx)));
    const __m256d ir = _mm256_div_pd(one, _mm256_sqrt_pd(r2));
    const __m256d ir3 = _mm256_div_pd(ir, r2);
    const __m256d ir5 = _mm256_div_pd(ir3, r2);
    const __m256d fx = _mm256_loadu_pd(a.fx + j), fy = _mm256_loadu_pd(a.fy + j),
                  fz = _mm256_loadu_pd(a.fz + j);
    const __m256d rf = _mm256_fmadd_pd(rz, fz, _mm256_fmadd_pd(ry, fy, _mm256_mul_pd(rx, fx)));
    const __m256d wj = _mm256_loadu_pd(w + j);
    const __m256d cf = _mm256_mul_pd(wj, _mm256_fmadd_pd(he2, ir3, ir));
    const __m256d cr = _mm256_mul_pd(_mm256_mul_pd(wj, rf), _mm256_fnmadd_pd(the2, ir5, ir3));
    ox = _mm256_fmadd_pd(cr, rx, _mm256_fmadd_pd(cf, fx, ox));
    oy = _mm256_fmadd_pd(cr, ry, _mm256_fmadd_pd(cf, fy, oy));
    oz = _mm256_fmadd_pd(cr, rz, _mm256_fmadd_pd(cf, fz, oz));
  }
  double sx = hsum(ox), sy = hsum(oy), sz = hsum(oz);
  if (j < a.n) {
    NodeArrays tail{a.yx + j, a.yy + j, a.yz + j, a.fx + j, a.fy + j, a.fz + j, a.n - j};
    double rest[3] = {0.0, 0.0, 0.0};
    scalar_kernels().slender_direct_sum(tail, w + j, x, eps, rest);
    sx += rest[0];
    sy += rest[1];
    sz += rest[2];
  }
  out[0] += sx;
  out[1] += sy;
  out[2] += sz;
}

void slender_weighted_sum(const NodeArrays& a, const double* l1, const double* l3, const double* l5,
                          const double* x, double eps, double* out) {
  const double e2 = eps * eps;
  const __m256d vx = _mm256_set1_pd(x[0]), vy = _mm256_set1_pd(x[1]), vz = _mm256_set1_pd(x[2]);
  const __m256d he2 = _mm256_set1_pd(0.5 * e2), the2 = _mm256_set1_pd(1.5 * e2);
  __m256d ox = _mm256_setzero_pd(), oy = _mm256_setzero_pd(), oz = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= a.n; j += 4) {
    const __m256d rx = _mm256_sub_pd(vx, _mm256_loadu_pd(a.yx + j));
    const __m256d ry = _mm256_sub_pd(vy, _mm256_loadu_pd(a.yy + j));
    const __m256d rz = _mm256_sub_pd(vz, _mm256_loadu_pd(a.yz + j));
    const __m256d fx = _mm256_loadu_pd(a.fx + j), fy = _mm256_loadu_pd(a.fy + j),
                  fz = _mm256_loadu_pd(a.fz + j);
    const __m256d rf = _mm256_fmadd_pd(rz, fz, _mm256_fmadd_pd(ry, fy, _mm256_mul_pd(rx, fx)));
    const __m256d w3 = _mm256_loadu_pd(l3 + j);
    const __m256d cf = _mm256_fmadd_pd(he2, w3, _mm256_loadu_pd(l1 + j));
    const __m256d cr = _mm256_mul_pd(rf, _mm256_fnmadd_pd(the2, _mm256_loadu_pd(l5 + j), w3));
    ox = _mm256_fmadd_pd(cr, rx, _mm256_fmadd_pd(cf, fx, ox));
    oy = _mm256_fmadd_pd(cr, ry, _mm256_fmadd_pd(cf, fy, oy));
    oz = _mm256_fmadd_pd(cr, rz, _mm256_fmadd_pd(cf, fz, oz));
  }
  double sx = hsum(ox), sy = hsum(oy), sz = hsum(oz);
  if (j < a.n) {
    NodeArrays tail{a.yx + j, a.yy + j, a.yz + j, a.fx + j, a.fy + j, a.fz + j, a.n - j};
    double rest[3] = {0.0, 0.0, 0.0};
    scalar_kernels().slender_weighted_sum(tail, l1 + j, l3 + j, l5 + j, x, eps, rest);
    sx += rest[0];
    sy += rest[1];
    sz += rest[2];
  }
  out[0] += sx;
  out[1] += sy;
  out[2] += sz;
}

void ssq3d_correct(const double* t, cplx t0, const double* yx, const double* yy, const double* yz,
                   const double* speed, const double* x, int n, double* l1, double* l3, double* l5) {
  const __m256d tr = _mm256_set1_pd(t0.real()), ti2 = _mm256_set1_pd(t0.imag() * t0.imag());
  const __m256d vx = _mm256_set1_pd(x[0]), vy = _mm256_set1_pd(x[1]), vz = _mm256_set1_pd(x[2]);
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dt = _mm256_sub_pd(_mm256_loadu_pd(t + j), tr);
    const __m256d num = _mm256_fmadd_pd(dt, dt, ti2);
    const __m256d rx = _mm256_sub_pd(_mm256_loadu_pd(yx + j), vx);
    const __m256d ry = _mm256_sub_pd(_mm256_loadu_pd(yy + j), vy);
    const __m256d rz = _mm256_sub_pd(_mm256_loadu_pd(yz + j), vz);
    const __m256d r2 = _mm256_fmadd_pd(rz, rz, _mm256_fmadd_pd(ry, ry, _mm256_mul_pd(rx, rx)));
    const __m256d q = _mm256_div_pd(num, r2);
    const __m256d s1 = _mm256_mul_pd(_mm256_loadu_pd(speed + j), _mm256_sqrt_pd(q));
    _mm256_storeu_pd(l1 + j, _mm256_mul_pd(_mm256_loadu_pd(l1 + j), s1));
    if (l3) {
      const __m256d s3 = _mm256_mul_pd(s1, q);
      _mm256_storeu_pd(l3 + j, _mm256_mul_pd(_mm256_loadu_pd(l3 + j), s3));
      if (l5) _mm256_storeu_pd(l5 + j, _mm256_mul_pd(_mm256_loadu_pd(l5 + j), _mm256_mul_pd(s3, q)));
    } else if (l5) {
      const __m256d s5 = _mm256_mul_pd(_mm256_mul_pd(s1, q), q);
      _mm256_storeu_pd(l5 + j, _mm256_mul_pd(_mm256_loadu_pd(l5 + j), s5));
    }
  }
  if (j < n)
    scalar_kernels().ssq3d_correct(t + j, t0, yx + j, yy + j, yz + j, speed + j, x, n - j, l1 + j,
                                   l3 ? l3 + j : nullptr, l5 ? l5 + j : nullptr);
}

// One 256-bit lane holds the four right-hand sides of a node.
void bp_dual4(const double* x, const double* inv, int n, double* z) {
  for (int k = 0; k + 1 < n; ++k) {
    const __m256d xk = _mm256_set1_pd(x[k]);
    for (int i = n - 1; i > k; --i) {
      const __m256d zi = _mm256_loadu_pd(z + 4 * i);
      const __m256d zp = _mm256_loadu_pd(z + 4 * (i - 1));
      _mm256_storeu_pd(z + 4 * i, _mm256_fnmadd_pd(xk, zp, zi));
    }
  }
  for (int k = n - 2; k >= 0; --k) {
    const double* row = inv + static_cast<size_t>(k) * n;
    for (int i = k + 1; i < n; ++i)
      _mm256_storeu_pd(z + 4 * i, _mm256_mul_pd(_mm256_loadu_pd(z + 4 * i), _mm256_set1_pd(row[i])));
    for (int i = k; i + 1 < n; ++i)
      _mm256_storeu_pd(z + 4 * i,
                       _mm256_sub_pd(_mm256_loadu_pd(z + 4 * i), _mm256_loadu_pd(z + 4 * (i + 1))));
  }
}

cplx cauchy_sum(const double* cre, const double* cim, const double* tre, const double* tim, int n,
                cplx zeta) {
  const __m256d zr = _mm256_set1_pd(zeta.real()), zi = _mm256_set1_pd(zeta.imag());
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d sre = _mm256_setzero_pd(), sim = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dre = _mm256_sub_pd(_mm256_loadu_pd(tre + j), zr);
    const __m256d dim = _mm256_sub_pd(_mm256_loadu_pd(tim + j), zi);
    const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dim, dim, _mm256_mul_pd(dre, dre)));
    const __m256d cr = _mm256_loadu_pd(cre + j), ci = _mm256_loadu_pd(cim + j);
    sre = _mm256_fmadd_pd(_mm256_fmadd_pd(ci, dim, _mm256_mul_pd(cr, dre)), inv, sre);
    sim = _mm256_fmadd_pd(_mm256_fmsub_pd(ci, dre, _mm256_mul_pd(cr, dim)), inv, sim);
  }
  cplx s{hsum(sre), hsum(sim)};
  if (j < n) s += scalar_kernels().cauchy_sum(cre + j, cim + j, tre + j, tim + j, n - j, zeta);
  return s;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{slender_direct_sum, slender_weighted_sum, ssq3d_correct, bp_dual4,
                                 cauchy_sum};
  return &table;
}

}  // namespace linequad::simd
