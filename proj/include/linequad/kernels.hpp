#pragma once

#include <array>
#include <functional>
#include <vector>

#include "linequad/types.hpp"

namespace linequad {

// ---------------------------------------------------------------------------
// 2D kernels in complex-variable form
// ---------------------------------------------------------------------------

/// Node data handed to split-term prefactors; dtau is gamma'(t), nu = i gamma' / |gamma'|.
struct NodeData2D {
  cplx tau;
  cplx dtau;
  cplx nu;
  cplx density;
};

enum class SingularityKind { Log, Power };

/// Operation applied to the contour integral of a split term.
enum class PostMap { Identity, Conj, Imag, Real };

/// One term  scale * post( int prefactor(t, z) K(tau - z) dtau )  with
/// K = log(tau - z) or (tau - z)^(-m).
struct SplitTerm2D {
  SingularityKind kind = SingularityKind::Power;
  int m = 1;
  std::function<cplx(const NodeData2D&, cplx z)> prefactor;
  PostMap post = PostMap::Identity;
  cplx scale{1.0, 0.0};
};

struct KernelSplit2D {
  std::vector<SplitTerm2D> terms;
  int max_power() const;
  bool has_log() const;
};

cplx apply_post(PostMap post, cplx value);

/// int rho (y - x).n / |y - x|^2 ds with n = nu:  -Im int rho dtau / (tau - z).
KernelSplit2D laplace_dlp_2d();
/// int rho log|y - x| ds:  -Im int rho conj(nu) log(tau - z) dtau.
KernelSplit2D laplace_slp_2d();
/// int rho (y - x) / |y - x|^2 ds as a complex number:  conj( int rho conj(nu) i dtau / (tau - z) ).
KernelSplit2D cauchy_gradient_2d();
/// int (f.(y-x)) (y-x) ((y-x).n) / |y-x|^4 ds for a vector density f stored as a complex number.
KernelSplit2D hypersingular_r4_2d();

/// Real-variable kernels for cross-checks (x, y, n as complex numbers).
double laplace_dlp_real(cplx x, cplx y, cplx normal);
double laplace_slp_real(cplx x, cplx y);
cplx cauchy_gradient_real(cplx x, cplx y);
cplx r4_kernel_real(cplx x, cplx y, cplx normal, cplx f);

// ---------------------------------------------------------------------------
// 3D slender-body Stokes kernels
// ---------------------------------------------------------------------------

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 operator*(const Mat3& a, const Vec3& v);

/// S = I/|R| + R R^T / |R|^3.
Mat3 stokeslet(const Vec3& r);
/// D = I/|R|^3 - 3 R R^T / |R|^5.
Mat3 doublet(const Vec3& r);

/// u = int (S + eps^2/2 D) f ds split as I1 + I3 + I5 with R = x - y:
///   I1 numerator f, I3 numerator (R R^T + eps^2 I / 2) f, I5 numerator -3 eps^2 / 2 R R^T f.
struct SlenderBodySplit {
  double eps = 1e-3;

  Vec3 numerator1(const Vec3& /*r*/, const Vec3& f) const { return f; }
  Vec3 numerator3(const Vec3& r, const Vec3& f) const {
    return dot(r, f) * r + (0.5 * eps * eps) * f;
  }
  Vec3 numerator5(const Vec3& r, const Vec3& f) const {
    return (-1.5 * eps * eps * dot(r, f)) * r;
  }
  /// Full kernel (S + eps^2/2 D) f at separation r.
  Vec3 kernel(const Vec3& r, const Vec3& f) const;
};

SlenderBodySplit slender_body_split(double eps);

}  // namespace linequad
