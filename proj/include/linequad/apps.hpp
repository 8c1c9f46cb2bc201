#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linequad/config.hpp"
#include "linequad/geometry.hpp"
#include "linequad/specialquad.hpp"

namespace linequad::apps {

/// Pointwise relative errors on a set of targets, normalized by max |u_ref|.
struct ErrorGrid {
  int dim = 2;
  int nx = 0;
  int ny = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> err;
  /// Distance (or distance proxy) of each point to the curve; empty if unused.
  std::vector<double> dist;
  std::string scheme;
  std::map<std::string, std::string> meta;

  double max_error() const;
  /// Largest error among points with dist >= threshold.
  double max_error_beyond(double threshold) const;
};

struct BenchRecord {
  double d = 0.0;
  double eps_panel = 0.0;
  std::string scheme;
  long long n_eval = 0;
  double t_eval = 0.0;
  double t_weights = 0.0;  ///< SSQ: roots and weights; adaptive: interpolation time
  double max_rel_error = 0.0;
  int targets = 0;
  std::uint64_t seed = 0;
};

struct GridSpec {
  int nx = 100;
  int ny = 100;
};

/// Parses "WxH".
GridSpec parse_grid(const std::string& text);

// ---------------------------------------------------------------------------
// Parabola panel, Laplace double layer with density y1 y2
// ---------------------------------------------------------------------------

struct ParabolaOptions {
  double k = 0.25;
  int n = 16;
  Scheme scheme = Scheme::SSQ;
  Upsampling mode = Upsampling::None;
  double tol = 1e-14;  ///< sets rho_eps at the special node count
  GridSpec grid{100, 100};
  /// Bounding box of the evaluation grid.
  double x_lo = -1.2, x_hi = 1.2, y_lo = -0.6, y_hi = 1.0;
};

ParabolaOptions default_parabola_options();

/// Parabola g(t) = (t, k t^2) on [-1, 1] as a single panel.
ParamCurve parabola_curve(double k);

/// Adaptive Gauss-Kronrod reference for the parabola DLP at zeta.
double parabola_reference(double k, cplx zeta);

/// Error grid with the distance of each point to the panel in dist.
ErrorGrid demo_parabola(const ParabolaOptions& opt);

// ---------------------------------------------------------------------------
// Starfish interior Dirichlet problem
// ---------------------------------------------------------------------------

enum class StarfishGrid { Global, Near, NearLog };

struct StarfishOptions {
  double eps_panel = 1e-6;
  int n = 16;
  Scheme scheme = Scheme::SSQ;
  Upsampling mode = Upsampling::UpsampleDirect;
  double tol = 1e-8;
  StarfishGrid grid_kind = StarfishGrid::Global;
  GridSpec grid{100, 100};
  double d_min = 1e-3;  ///< smallest Im t for the near grids
};

ParamCurve starfish_curve();
double starfish_exact(cplx zeta);

struct StarfishProblem {
  SourceSet2D sources;
  int unknowns = 0;
};

/// Panelizes the starfish and solves the second-kind equation for the density.
StarfishProblem solve_starfish(double eps_panel, int n);

/// Error grid; dist holds Im t for the near grids and is empty for the global grid.
ErrorGrid demo_starfish(const StarfishOptions& opt);
ErrorGrid demo_starfish(const StarfishOptions& opt, const StarfishProblem& problem);

// ---------------------------------------------------------------------------
// Slender fibre in 3D
// ---------------------------------------------------------------------------

/// Closed random-Fourier curve on [0, 1) from the stored coefficient table.
ParamCurve squiggle_curve();

struct SlenderOptions {
  double eps_panel = 1e-10;
  std::vector<double> d_list{1e-2};
  int targets = 500;
  std::uint64_t seed = 1;
  double fibre_eps = 1e-3;
  double tol = 0.0;  ///< 0: rho_eps = 3 (the 3D default)
  int ref_n = 18;
  double ref_eps_panel = 5e-14;
  bool run_adaptive = true;  ///< also time the adaptive scheme on the same discretization
  bool slice = false;
  GridSpec grid{50, 50};
};

/// Force f(y) = y sampled on each panel.
SourceSet3D slender_sources(const ParamCurve& curve, double eps_panel, int n);

/// Random targets at distance d from the curve (point on curve plus a random
/// unit direction in the normal plane).
std::vector<Vec3> slender_targets(const ParamCurve& curve, double d, int count, std::uint64_t seed);

struct SlenderResult {
  std::vector<BenchRecord> records;
  std::optional<ErrorGrid> slice;
};

SlenderResult demo_slender(const SlenderOptions& opt);

/// Weight-construction throughput (targets / second) for near targets at distance d.
struct ThroughputResult {
  double targets_per_second = 0.0;
  long long special_pairs = 0;
  int threads = 1;
};
ThroughputResult measure_throughput(double d, int targets, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void write_csv(const ErrorGrid& grid, std::ostream& os);
void write_json(const ErrorGrid& grid, std::ostream& os);
void write_csv(const std::vector<BenchRecord>& records, std::ostream& os);
void write_json(const std::vector<BenchRecord>& records, std::ostream& os);

}  // namespace linequad::apps
