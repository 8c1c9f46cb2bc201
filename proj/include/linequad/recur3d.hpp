#pragma once

#include <span>
#include <vector>

#include "linequad/types.hpp"

namespace linequad {

/// Geometry of a root pair {t0, conj(t0)} relative to [-1, 1].
struct RootPairGeom {
  double tr = 0.0;
  double ti = 0.0;  ///< >= 0
  double b = 0.0;   ///< -2 tr
  double c = 0.0;   ///< tr^2 + ti^2
  double d = 0.0;   ///< ti^2
  double u1 = 0.0;  ///< |1 + t0|
  double u2 = 0.0;  ///< |1 - t0|

  static RootPairGeom from(cplx t0);
};

/// Series cone thresholds and term counts for the endpoint expansions.
inline constexpr double s3_cone = 0.6;
inline constexpr double s5_cone = 0.7;
inline constexpr int s1_terms = 11;
inline constexpr int s3_terms = 30;
inline constexpr int s5_terms = 50;

/// True when 0 <= ti / (|tr| - 1) < threshold with |tr| > 1.
bool in_endpoint_cone(cplx t0, double threshold);
/// True inside the rhombus 4 ti < 1 - |tr|.
bool in_rhombus(cplx t0);

/// Coefficient tables of the endpoint series (index n multiplies (ti/s)^(2n)).
std::span<const double> s1_coefficients();
std::span<const double> s3_coefficients();
std::span<const double> s5_coefficients();

/// P^m_k(t0) = int_{-1}^{1} t^{k-1} / |t - t0|^m dt, k = 1..n, m = 1, 3, 5.
std::vector<double> pvec_m1(cplx t0, int n);
std::vector<double> pvec_m3(cplx t0, int n, std::span<const double> p1);
std::vector<double> pvec_m5(cplx t0, int n, std::span<const double> p3);

struct PVectors {
  std::vector<double> p1;
  std::vector<double> p3;
  std::vector<double> p5;
};

/// All three vectors at once (p5 left empty when max_m < 5, p3 when max_m < 3).
PVectors pvectors(cplx t0, int n, int max_m = 5);

/// Allocation-free variant; p1 needs length n, p3/p5 may be null when not required.
void pvectors_into(cplx t0, int n, double* p1, double* p3, double* p5);

}  // namespace linequad
