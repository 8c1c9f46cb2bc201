#pragma once

#include <string_view>

#include "linequad/types.hpp"

namespace linequad::simd {

// Hot inner loops with a scalar reference implementation and an AVX2/FMA
// variant. The variant is chosen once at runtime from CPU features; setting
// LINEQUAD_SIMD=scalar forces the reference path.

/// Structure-of-arrays view of panel nodes with a per-node vector field.
struct NodeArrays {
  const double* yx;
  const double* yy;
  const double* yz;
  const double* fx;
  const double* fy;
  const double* fz;
  int n;
};

struct KernelTable {
  /// out += sum_j w_j (S(R_j) + eps^2/2 D(R_j)) f_j with R_j = x - y_j.
  void (*slender_direct_sum)(const NodeArrays& a, const double* w, const double* x, double eps,
                             double* out);
  /// out += sum_j [l1_j f_j + l3_j (R R^T + eps^2/2 I) f_j - 3 eps^2/2 l5_j R R^T f_j].
  void (*slender_weighted_sum)(const NodeArrays& a, const double* l1, const double* l3,
                               const double* l5, const double* x, double eps, double* out);
  /// l_m[j] *= speed_j (|t_j - t0|^2 / |y_j - x|^2)^(m/2) for m = 1, 3, 5 (l3/l5 may be null).
  void (*ssq3d_correct)(const double* t, cplx t0, const double* yx, const double* yy,
                        const double* yz, const double* speed, const double* x, int n,
                        double* l1, double* l3, double* l5);
  /// Four dual Vandermonde solves with interleaved right-hand sides z[4 i + r].
  void (*bp_dual4)(const double* x, const double* inv, int n, double* z);
  /// sum_j c_j / (tau_j - zeta) with split real/imaginary arrays.
  cplx (*cauchy_sum)(const double* cre, const double* cim, const double* tre, const double* tim,
                     int n, cplx zeta);
};

const KernelTable& scalar_kernels();
/// Null when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

/// The table selected at startup.
const KernelTable& kernels();
std::string_view active_isa();

}  // namespace linequad::simd
