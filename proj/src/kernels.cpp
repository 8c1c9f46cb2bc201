#include "linequad/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linequad {

namespace {

constexpr cplx I{0.0, 1.0};

double dot2(cplx a, cplx b) { return std::real(a * std::conj(b)); }

}  // namespace

int KernelSplit2D::max_power() const {
  int m = 0;
  for (const auto& t : terms)
    if (t.kind == SingularityKind::Power) m = std::max(m, t.m);
  return m;
}

bool KernelSplit2D::has_log() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const SplitTerm2D& t) { return t.kind == SingularityKind::Log; });
}

cplx apply_post(PostMap post, cplx value) {
  switch (post) {
    case PostMap::Identity: return value;
    case PostMap::Conj: return std::conj(value);
    case PostMap::Imag: return {value.imag(), 0.0};
    case PostMap::Real: return {value.real(), 0.0};
  }
  return value;
}

KernelSplit2D laplace_dlp_2d() {
  KernelSplit2D s;
  s.terms.push_back({SingularityKind::Power, 1,
                     [](const NodeData2D& d, cplx) { return d.density; }, PostMap::Imag, -1.0});
  return s;
}

KernelSplit2D laplace_slp_2d() {
  KernelSplit2D s;
  s.terms.push_back({SingularityKind::Log, 0,
                     [](const NodeData2D& d, cplx) { return d.density * std::conj(d.nu); },
                     PostMap::Imag, -1.0});
  return s;
}

KernelSplit2D cauchy_gradient_2d() {
  KernelSplit2D s;
  s.terms.push_back({SingularityKind::Power, 1,
                     [](const NodeData2D& d, cplx) { return I * d.density * std::conj(d.nu); },
                     PostMap::Conj, 1.0});
  return s;
}

KernelSplit2D hypersingular_r4_2d() {
  const cplx c = 1.0 / (4.0 * I);
  KernelSplit2D s;
  s.terms.push_back({SingularityKind::Power, 2,
                     [](const NodeData2D& d, cplx z) { return std::conj(d.tau - z) * d.density; },
                     PostMap::Conj, c});
  s.terms.push_back({SingularityKind::Power, 1,
                     [](const NodeData2D& d, cplx) {
                       const cplx nb = std::conj(d.nu);
                       return std::conj(d.density) + d.density * nb * nb;
                     },
                     PostMap::Conj, c});
  s.terms.push_back({SingularityKind::Power, 1,
                     [](const NodeData2D& d, cplx) { return d.density; }, PostMap::Identity, -c});
  return s;
}

double laplace_dlp_real(cplx x, cplx y, cplx normal) {
  const cplx r = y - x;
  return dot2(r, normal) / std::norm(r);
}

double laplace_slp_real(cplx x, cplx y) { return std::log(std::abs(y - x)); }

cplx cauchy_gradient_real(cplx x, cplx y) {
  const cplx r = y - x;
  return r / std::norm(r);
}

cplx r4_kernel_real(cplx x, cplx y, cplx normal, cplx f) {
  const cplx r = y - x;
  const double r2 = std::norm(r);
  return dot2(f, r) * dot2(r, normal) / (r2 * r2) * r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
          a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
          a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
}

Mat3 stokeslet(const Vec3& r) {
  const double r2 = norm2(r);
  if (r2 == 0.0) throw std::invalid_argument("stokeslet: zero separation");
  const double ir = 1.0 / std::sqrt(r2), ir3 = ir / r2;
  Mat3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = (i == j ? ir : 0.0) + r[i] * r[j] * ir3;
  return s;
}

Mat3 doublet(const Vec3& r) {
  const double r2 = norm2(r);
  if (r2 == 0.0) throw std::invalid_argument("doublet: zero separation");
  const double ir = 1.0 / std::sqrt(r2), ir3 = ir / r2, ir5 = ir3 / r2;
  Mat3 d{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i][j] = (i == j ? ir3 : 0.0) - 3.0 * r[i] * r[j] * ir5;
  return d;
}

Vec3 SlenderBodySplit::kernel(const Vec3& r, const Vec3& f) const {
  const double r2 = norm2(r);
  if (r2 == 0.0) throw std::invalid_argument("slender kernel: zero separation");
  const double ir = 1.0 / std::sqrt(r2), ir3 = ir / r2, ir5 = ir3 / r2;
  const double rf = dot(r, f);
  const double e2 = eps * eps;
  // S f + eps^2/2 D f
  return (ir + 0.5 * e2 * ir3) * f + (rf * (ir3 - 1.5 * e2 * ir5)) * r;
}

SlenderBodySplit slender_body_split(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("slender_body_split: radius must be positive");
  return SlenderBodySplit{eps};
}

}  // namespace linequad
