#pragma once

#include <string_view>

namespace linequad {

enum class Upsampling {
  None,            ///< weights on the native n nodes
  Upsample,        ///< special weights on 2n nodes
  UpsampleDirect,  ///< as Upsample, plus plain 2n-node rule in the band sqrt(rho_eps) <= rho < rho_eps
};

Upsampling parse_upsampling(std::string_view name);
std::string_view to_string(Upsampling mode);

/// Tunables of the near-evaluation pipeline.
struct QuadConfig {
  int n = 16;
  Upsampling mode = Upsampling::None;
  /// Critical Bernstein radius: targets whose preimage lies outside E_rho use the plain rule.
  double rho_eps = 3.0;
  /// Near-candidate distance D as a multiple of the panel arc length.
  double distance_multiplier = 1.0;
  int newton_max_iter = 20;
  int muller_max_iter = 50;
  /// Use the comrade-matrix root finder when Newton fails or a Schwarz preimage is close.
  bool companion_fallback = false;
  /// 3D special targets are always evaluated on 2n nodes.
  bool always_upsample_3d = true;

  /// Node count used for special weights under the current mode.
  int special_nodes() const { return mode == Upsampling::None ? n : 2 * n; }

  /// Config whose rho_eps follows from a target tolerance at n nodes.
  static QuadConfig from_tolerance(double tol, int n = 16, Upsampling mode = Upsampling::None);
};

}  // namespace linequad
