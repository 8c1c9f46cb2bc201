#include "linequad/config.hpp"

#include <stdexcept>
#include <string>

#include "linequad/geometry.hpp"

namespace linequad {

Upsampling parse_upsampling(std::string_view name) {
  if (name == "none") return Upsampling::None;
  if (name == "upsample") return Upsampling::Upsample;
  if (name == "upsample-direct") return Upsampling::UpsampleDirect;
  throw std::invalid_argument("unknown upsampling mode: " + std::string(name));
}

std::string_view to_string(Upsampling mode) {
  switch (mode) {
    case Upsampling::None: return "none";
    case Upsampling::Upsample: return "upsample";
    case Upsampling::UpsampleDirect: return "upsample-direct";
  }
  return "none";
}

QuadConfig QuadConfig::from_tolerance(double tol, int n, Upsampling mode) {
  QuadConfig cfg;
  cfg.n = n;
  cfg.mode = mode;
  cfg.rho_eps = rho_crit(tol, n);
  return cfg;
}

}  // namespace linequad
