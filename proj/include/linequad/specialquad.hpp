#pragma once

#include <atomic>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "linequad/config.hpp"
#include "linequad/geometry.hpp"
#include "linequad/kernels.hpp"
#include "linequad/rootfind.hpp"

namespace linequad {

enum class Scheme { Direct, HO, SSQ };

Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme);

/// Target-specific 2D weights. Each vector lambda satisfies
///   sum_j lambda_j f(t_j)  ~  int_{-1}^{1} f(t) K(gamma(t) - zeta) gamma'(t) dt,
/// i.e. the Jacobian is the complex derivative (contour measure d tau).
/// power[m - 1] holds K = (tau - zeta)^(-m); log holds K = log(tau - zeta).
struct Weights2D {
  Scheme scheme = Scheme::Direct;
  std::vector<cplx> log;
  std::vector<std::vector<cplx>> power;
};

/// Real-kernel direct weights w_j |g'_j| K(x, y_j).
std::vector<double> direct_weights(const Panel& panel, const Vec3& x,
                                   const std::function<double(const Vec3&, const Vec3&)>& kernel);

Weights2D direct_weights_2d(const Panel& panel, cplx zeta, int max_m, bool need_log);
Weights2D ho_weights_2d(const Panel& panel, cplx zeta, int max_m, bool need_log);
/// t0 must be a converged preimage with respect to the same panel geometry.
Weights2D ssq_weights_2d(const Panel& panel, cplx zeta, cplx t0, int max_m, bool need_log);

/// Target-specific 3D weights for int f(t) / |g(t) - x|^m |g'(t)| dt, m = 1, 3, 5.
struct Weights3D {
  std::vector<double> w1;
  std::vector<double> w3;
  std::vector<double> w5;
};

Weights3D direct_weights_3d(const Panel& panel, const Vec3& x);
/// Weights on the nodes of `panel` (typically upsampled) for the root t0.
Weights3D ssq_weights_3d(const Panel& panel, const Vec3& x, cplx t0, int max_m = 5);

// ---------------------------------------------------------------------------
// Near-evaluation pipeline
// ---------------------------------------------------------------------------

/// Counters accumulated over a sweep; safe for concurrent use.
struct NearEvalStats {
  std::atomic<long long> far{0};
  std::atomic<long long> near_direct{0};
  std::atomic<long long> special{0};
  std::atomic<long long> root_failures{0};
  /// Kernel evaluations on panels routed to the special path (near field).
  std::atomic<long long> near_kernel_evals{0};
  /// Wall time (ns) spent in root finding and weight construction.
  std::atomic<long long> weight_ns{0};
  /// Wall time (ns) spent in near kernel evaluations.
  std::atomic<long long> eval_ns{0};
};

/// Panels of a 2D curve with one density sample per node.
/// Optional fine copies hold each panel resampled to 2n nodes; they are
/// target-independent, so building them once saves work in sweeps.
struct SourceSet2D {
  std::vector<Panel> panels;
  std::vector<std::vector<cplx>> density;
  std::vector<Panel> fine;
  std::vector<std::vector<cplx>> fine_density;
};

/// Panels of a 3D curve with one force sample per node.
struct SourceSet3D {
  std::vector<Panel> panels;
  std::vector<std::vector<Vec3>> force;
  std::vector<Panel> fine;
  std::vector<std::vector<Vec3>> fine_force;
};

/// Fills the fine copies with m-node resamplings (geometry and data separately).
void prepare_fine(SourceSet2D& sources, int m);
void prepare_fine(SourceSet3D& sources, int m);

/// Evaluates the split kernel at zeta, summing over panels and terms. Complex
/// result; for real-valued kernels the imaginary part is zero.
cplx near_eval_2d(const SourceSet2D& sources, cplx zeta, const KernelSplit2D& split,
                  Scheme scheme, const QuadConfig& cfg, NearEvalStats* stats = nullptr);

/// Contribution of a single panel (used by the pipeline and by Nystrom assembly).
/// `fine` / `fine_density` may supply a precomputed 2n-node resampling.
cplx panel_eval_2d(const Panel& panel, std::span<const cplx> density, cplx zeta,
                   const KernelSplit2D& split, Scheme scheme, const QuadConfig& cfg,
                   NearEvalStats* stats = nullptr, const Panel* fine = nullptr,
                   std::span<const cplx> fine_density = {});

/// Slender-body velocity at x with fibre radius eps.
Vec3 near_eval_slender(const SourceSet3D& sources, const Vec3& x, double eps, Scheme scheme,
                       const QuadConfig& cfg, NearEvalStats* stats = nullptr);

/// Plain Gauss-Legendre slender-body sum over one panel's nodes.
Vec3 slender_direct_panel(const Panel& panel, std::span<const Vec3> force, const Vec3& x,
                          double eps);

}  // namespace linequad
