#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "linequad/config.hpp"
#include "linequad/geometry.hpp"

namespace linequad {

enum class RootMethod { None, Newton, Muller, Companion };

std::string_view to_string(RootMethod method);

/// Complex parameter preimage of a target under the continued panel map.
/// In 3D the root stands for the conjugate pair {t0, conj(t0)} and is stored
/// with Im t0 >= 0.
struct Preimage {
  cplx t0{0.0, 0.0};
  bool converged = false;
  int iterations = 0;
  RootMethod method = RootMethod::None;
  double rho = 0.0;       ///< Bernstein radius of t0
  double residual = 0.0;  ///< |defining polynomial at t0|
};

/// Newton on P[gamma](t) - zeta from t = s(zeta).
Preimage newton_preimage_2d(const Panel& panel, cplx zeta, const QuadConfig& cfg);

/// All roots of sum_k c_k P_k(t) (Legendre basis), from the eigenvalues of the
/// comrade matrix, each polished by Newton on the series. Trailing zero
/// coefficients are trimmed; throws std::invalid_argument on a constant series.
std::vector<cplx> all_roots_companion(std::span<const cplx> legendre_coefs);
std::vector<cplx> all_roots_companion(std::span<const double> legendre_coefs);

/// Root nearest [-1, 1] of the 2D displacement polynomial via the comrade matrix.
Preimage companion_preimage_2d(const Panel& panel, cplx zeta);

/// Newton on R~(t)^2 = sum_i (P[g_i](t) - x_i)^2 from the planar initial
/// guess, switching to Muller after cfg.newton_max_iter iterations.
Preimage root_3d(const Panel& panel, const Vec3& x, const QuadConfig& cfg);

/// Planar two-node initial guess for root_3d, in the upper half-plane.
cplx initial_guess_3d(const Panel& panel, const Vec3& x);

/// Value and derivative of R~(t)^2.
ValueAndDerivative squared_distance_poly(const Panel& panel, const Vec3& x, cplx t);

/// All roots of R~(t)^2 from a Legendre fit of degree 2(m-1) and the comrade
/// matrix, where m is the number of fit terms of the panel. Used as ground truth.
std::vector<cplx> roots_3d_companion(const Panel& panel, const Vec3& x);

enum class TargetKind { Far, NearDirectUpsampled, Special };

std::string_view to_string(TargetKind kind);

struct TargetClass {
  TargetKind kind = TargetKind::Far;
  std::optional<Preimage> preimage;
  bool root_failed = false;       ///< root-finding failed; degraded to Far
  bool companion_used = false;    ///< comrade-matrix fallback fired
  bool near_candidate = false;    ///< min node distance < D
};

double min_node_distance(const Panel& panel, const Vec3& x);

/// True when no node can lie within distance D of x (cheap bounding-ball test).
inline bool nodes_beyond(const Panel& panel, const Vec3& x, double D) {
  const double r = D + panel.node_radius;
  return norm2(x - panel.node_center) >= r * r;
}

/// Far / NearDirectUpsampled / Special per the distance and Bernstein-radius tests.
TargetClass classify_target(const Panel& panel, const Vec3& x, const QuadConfig& cfg);

/// Process-wide diagnostic counters (relaxed atomics).
struct RootDiagnostics {
  long long root_failures = 0;
  long long companion_triggers = 0;
};
RootDiagnostics root_diagnostics();
void reset_root_diagnostics();

}  // namespace linequad
