#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "linequad/apps.hpp"

namespace linequad::apps {

void write_csv(const ErrorGrid& grid, std::ostream& os) {
  os << (grid.dim == 3 ? "x,y,z,E_rel\n" : "x,y,E_rel\n");
  os << std::setprecision(17);
  for (size_t i = 0; i < grid.err.size(); ++i) {
    os << grid.x[i] << ',' << grid.y[i] << ',';
    if (grid.dim == 3) os << grid.z[i] << ',';
    os << grid.err[i] << '\n';
  }
}

void write_json(const ErrorGrid& grid, std::ostream& os) {
  nlohmann::json j;
  j["dim"] = grid.dim;
  j["nx"] = grid.nx;
  j["ny"] = grid.ny;
  j["scheme"] = grid.scheme;
  j["meta"] = grid.meta;
  j["max_error"] = grid.max_error();
  j["x"] = grid.x;
  j["y"] = grid.y;
  if (grid.dim == 3) j["z"] = grid.z;
  j["E_rel"] = grid.err;
  os << j.dump(1) << '\n';
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& os) {
  os << "d,eps_panel,scheme,N_eval,t_eval,t_weights,max_rel_error,targets,seed\n";
  os << std::setprecision(17);
  for (const BenchRecord& r : records)
    os << r.d << ',' << r.eps_panel << ',' << r.scheme << ',' << r.n_eval << ',' << r.t_eval << ','
       << r.t_weights << ',' << r.max_rel_error << ',' << r.targets << ',' << r.seed << '\n';
}

void write_json(const std::vector<BenchRecord>& records, std::ostream& os) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRecord& r : records)
    arr.push_back({{"d", r.d},
                   {"eps_panel", r.eps_panel},
                   {"scheme", r.scheme},
                   {"N_eval", r.n_eval},
                   {"t_eval", r.t_eval},
                   {"t_weights", r.t_weights},
                   {"max_rel_error", r.max_rel_error},
                   {"targets", r.targets},
                   {"seed", r.seed}});
  os << arr.dump(1) << '\n';
}

}  // namespace linequad::apps
