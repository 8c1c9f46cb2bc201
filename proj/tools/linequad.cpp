// Command-line driver for the near-singular quadrature experiments.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linequad/apps.hpp"
#include "linequad/parallel.hpp"
#include "linequad/simd/dispatch.hpp"

namespace la = linequad::apps;

namespace {

struct CommonArgs {
  int n = 16;
  std::string scheme = "ssq";
  std::string mode;
  std::string grid;
  std::string out;
  std::string format = "csv";
  double tol = 0.0;
  double eps_panel = 0.0;
  std::vector<double> d;
  int targets = 500;
  std::uint64_t seed = 1;
  double k = 0.25;
};

void add_common(CLI::App* app, CommonArgs& a) {
  app->add_option("--n", a.n, "Gauss-Legendre nodes per panel")->check(CLI::Range(2, 32));
  app->add_option("--scheme", a.scheme, "Quadrature scheme")
      ->check(CLI::IsMember({"direct", "ho", "ssq"}));
  app->add_option("--mode", a.mode, "Upsampling mode")
      ->check(CLI::IsMember({"none", "upsample", "upsample-direct"}));
  app->add_option("--tol", a.tol, "Target tolerance (sets the critical Bernstein radius)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", a.out, "Output file (default: stdout)");
  app->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

template <class T>
void emit(const T& data, const CommonArgs& a) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;
  if (!a.out.empty()) {
    file = std::make_unique<std::ofstream>(a.out);
    if (!*file) throw std::runtime_error("cannot open output file '" + a.out + "'");
    os = file.get();
  }
  if (a.format == "json")
    la::write_json(data, *os);
  else
    la::write_csv(data, *os);
}

void summary(const la::ErrorGrid& g) {
  std::cerr << "points=" << g.err.size() << " max_rel_error=" << g.max_error() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singularity-swap quadrature experiments for nearly singular line integrals"};
  app.require_subcommand(1);
  CommonArgs a;

  auto* parabola = app.add_subcommand("parabola", "Double layer on a single parabolic panel");
  add_common(parabola, a);
  parabola->add_option("--k", a.k, "Parabola curvature y = k x^2")->check(CLI::NonNegativeNumber);
  parabola->add_option("--grid", a.grid, "Evaluation grid WxH");

  auto* starfish = app.add_subcommand("starfish", "Interior Dirichlet problem on a starfish");
  add_common(starfish, a);
  starfish->add_option("--eps-panel", a.eps_panel, "Panel resolution tolerance")
      ->check(CLI::PositiveNumber);
  std::string starfish_grid_kind = "global";
  starfish->add_option("--region", starfish_grid_kind, "Target region")
      ->check(CLI::IsMember({"global", "near", "near-log"}));
  starfish->add_option("--grid", a.grid, "Evaluation grid WxH");

  auto* slender = app.add_subcommand("slender", "Slender-body flow around a closed fibre");
  add_common(slender, a);
  slender->add_option("--eps-panel", a.eps_panel, "Panel resolution tolerance")
      ->check(CLI::PositiveNumber);
  slender->add_option("--d", a.d, "Target distances")->check(CLI::PositiveNumber);
  slender->add_option("--targets", a.targets, "Targets per distance")->check(CLI::PositiveNumber);
  slender->add_option("--seed", a.seed, "Random seed");
  slender->add_option("--grid", a.grid, "Also compute the y = 0.25 error slice on a WxH grid");

  auto* bench = app.add_subcommand("bench", "SSQ versus adaptive cost on the fibre, plus throughput");
  add_common(bench, a);
  bench->add_option("--eps-panel", a.eps_panel, "Panel resolution tolerance")
      ->check(CLI::PositiveNumber);
  bench->add_option("--d", a.d, "Target distances")->check(CLI::PositiveNumber);
  bench->add_option("--targets", a.targets, "Targets per distance")->check(CLI::PositiveNumber);
  bench->add_option("--seed", a.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const linequad::Scheme scheme = linequad::parse_scheme(a.scheme);
    std::cerr << "threads=" << linequad::thread_count()
              << " simd=" << linequad::simd::active_isa() << '\n';
    if (parabola->parsed()) {
      la::ParabolaOptions opt = la::default_parabola_options();
      opt.k = a.k;
      opt.n = a.n;
      opt.scheme = scheme;
      if (!a.mode.empty()) opt.mode = linequad::parse_upsampling(a.mode);
      if (a.tol > 0.0) opt.tol = a.tol;
      if (!a.grid.empty()) opt.grid = la::parse_grid(a.grid);
      const la::ErrorGrid g = la::demo_parabola(opt);
      summary(g);
      emit(g, a);
    } else if (starfish->parsed()) {
      la::StarfishOptions opt;
      opt.n = a.n;
      opt.scheme = scheme;
      if (!a.mode.empty()) opt.mode = linequad::parse_upsampling(a.mode);
      if (a.tol > 0.0) opt.tol = a.tol;
      if (a.eps_panel > 0.0) opt.eps_panel = a.eps_panel;
      if (!a.grid.empty()) opt.grid = la::parse_grid(a.grid);
      opt.grid_kind = starfish_grid_kind == "global" ? la::StarfishGrid::Global
                      : starfish_grid_kind == "near" ? la::StarfishGrid::Near
                                                     : la::StarfishGrid::NearLog;
      const la::ErrorGrid g = la::demo_starfish(opt);
      summary(g);
      emit(g, a);
    } else {
      if (scheme == linequad::Scheme::HO) throw std::invalid_argument("the ho scheme is two-dimensional only");
      if (a.n != 16) throw std::invalid_argument("the fibre experiments use n = 16");
      la::SlenderOptions opt;
      if (a.eps_panel > 0.0) opt.eps_panel = a.eps_panel;
      if (!a.d.empty()) opt.d_list = a.d;
      opt.targets = a.targets;
      opt.seed = a.seed;
      opt.tol = a.tol;
      const bool is_bench = bench->parsed();
      opt.run_adaptive = is_bench;
      if (!is_bench && !a.grid.empty()) {
        opt.slice = true;
        opt.grid = la::parse_grid(a.grid);
      }
      const la::SlenderResult r = la::demo_slender(opt);
      for (const auto& rec : r.records)
        std::cerr << rec.scheme << " d=" << rec.d << " N_eval/target=" << double(rec.n_eval) / rec.targets
                  << " max_rel_error=" << rec.max_rel_error << '\n';
      if (is_bench) {
        const la::ThroughputResult t = la::measure_throughput(opt.d_list.front(), 10000, opt.seed);
        std::cerr << "throughput=" << t.targets_per_second << " targets/s (" << t.special_pairs
                  << " special panel pairs, " << t.threads << " threads)\n";
      }
      if (r.slice) {
        summary(*r.slice);
        emit(*r.slice, a);
      } else {
        emit(r.records, a);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
