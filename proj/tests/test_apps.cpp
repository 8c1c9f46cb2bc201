#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "linequad/apps.hpp"
#include "linequad/parallel.hpp"

using namespace linequad;
using namespace linequad::apps;

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("parse_grid") {
  const GridSpec g = parse_grid("30x20");
  CHECK(g.nx == 30);
  CHECK(g.ny == 20);
  CHECK(parse_grid("7X3").ny == 3);
  for (const char* bad : {"30", "ax3", "0x5", "3x4y", "x", "-2x3"})
    CHECK_THROWS_AS(parse_grid(bad), std::invalid_argument);
}

TEST_CASE("ErrorGrid maxima") {
  ErrorGrid g;
  g.err = {1e-3, 1e-9, 1e-12};
  g.dist = {1e-5, 1e-2, 1.0};
  CHECK(g.max_error() == 1e-3);
  CHECK(g.max_error_beyond(1e-3) == 1e-9);
  CHECK(g.max_error_beyond(0.5) == 1e-12);
}

TEST_CASE("grid output as CSV and JSON") {
  ErrorGrid g;
  g.nx = 2;
  g.ny = 1;
  g.x = {0.5, -0.25};
  g.y = {1.0, 2.0};
  g.err = {1e-15, 3e-14};
  g.scheme = "ssq";
  g.meta["experiment"] = "unit";

  std::ostringstream csv;
  write_csv(g, csv);
  CHECK(csv.str().rfind("x,y,E_rel\n", 0) == 0);
  CHECK(count_lines(csv.str()) == 3);
  std::istringstream lines(csv.str());
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(row2.rfind("-0.25,2,", 0) == 0);
  CHECK(std::stod(row2.substr(row2.rfind(',') + 1)) == 3e-14);

  std::ostringstream js;
  write_json(g, js);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["dim"] == 2);
  CHECK(j["scheme"] == "ssq");
  CHECK(j["meta"]["experiment"] == "unit");
  CHECK(j["E_rel"].size() == 2);
  CHECK(j["max_error"].get<double>() == 3e-14);

  g.dim = 3;
  g.z = {0.0, 1.0};
  std::ostringstream csv3;
  write_csv(g, csv3);
  CHECK(csv3.str().rfind("x,y,z,E_rel\n", 0) == 0);
}

TEST_CASE("bench output as CSV and JSON") {
  const std::vector<BenchRecord> recs{{1e-2, 1e-10, "ssq", 1234, 0.5, 0.25, 1e-13, 500, 7},
                                      {1e-2, 1e-10, "adaptive", 9999, 1.5, 0.75, 1e-12, 500, 7}};
  std::ostringstream csv;
  write_csv(recs, csv);
  CHECK(csv.str().rfind("d,eps_panel,scheme,N_eval,t_eval,t_weights,max_rel_error,targets,seed\n", 0) == 0);
  CHECK(count_lines(csv.str()) == 3);

  std::ostringstream js;
  write_json(recs, js);
  const auto j = nlohmann::json::parse(js.str());
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[1]["scheme"] == "adaptive");
  CHECK(j[0]["N_eval"] == 1234);
  CHECK(j[0]["seed"] == 7);
}

TEST_CASE("parallel_for visits every index once and propagates exceptions") {
  CHECK(thread_count() >= 1);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("parabola demo on a small grid") {
  ParabolaOptions opt = default_parabola_options();
  opt.grid = {12, 9};
  opt.k = 0.4;
  opt.mode = Upsampling::Upsample;
  const ErrorGrid ssq = demo_parabola(opt);
  CHECK(ssq.err.size() == 108);
  CHECK(ssq.dist.size() == 108);
  CHECK(ssq.max_error() < 1e-12);
  opt.scheme = Scheme::Direct;
  CHECK(demo_parabola(opt).max_error() > 1e-6);
}

TEST_CASE("parabola reference is odd in x") {
  // The panel is symmetric about x = 0 and the density x y is odd.
  const double k = 0.3;
  const double a = parabola_reference(k, {0.37, 0.2});
  const double b = parabola_reference(k, {-0.37, 0.2});
  CHECK(std::abs(a + b) < 1e-15);
  CHECK(std::abs(a) > 1e-3);
}

TEST_CASE("starfish: coarse solve and global grid") {
  const StarfishProblem prob = solve_starfish(1e-6, 16);
  CHECK(prob.unknowns == 16 * static_cast<int>(prob.sources.panels.size()));
  StarfishOptions opt;
  opt.grid = {20, 20};
  const ErrorGrid g = demo_starfish(opt, prob);
  CHECK(g.err.size() > 100);
  // eps_panel 1e-6 bounds the density resolution, hence the field error.
  CHECK(g.max_error() < 1e-5);
  CHECK(std::abs(starfish_exact({0.0, 0.0}) - std::log(std::sqrt(18.0))) < 1e-15);

  opt.grid_kind = StarfishGrid::NearLog;
  opt.grid = {6, 6};
  opt.d_min = 1e-6;
  const ErrorGrid near = demo_starfish(opt, prob);
  CHECK(near.dist.size() == near.err.size());
  CHECK(near.max_error() < 1e-5);
}

TEST_CASE("slender targets lie at the requested distance") {
  const ParamCurve c = squiggle_curve();
  const auto a = slender_targets(c, 1e-3, 20, 42);
  const auto b = slender_targets(c, 1e-3, 20, 42);
  REQUIRE(a.size() == 20);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(norm(a[i] - b[i]) == 0.0);
    double best = 1e300, t_best = 0.0;
    for (int s = 0; s < 20000; ++s) {
      const double d = norm(c.g(s / 20000.0) - a[i]);
      if (d < best) {
        best = d;
        t_best = s / 20000.0;
      }
    }
    for (int s = -6000; s <= 6000; ++s) best = std::min(best, norm(c.g(t_best + s * 1e-8) - a[i]));
    CHECK(best <= 1e-3 * (1.0 + 1e-6));
    CHECK(best > 0.9e-3);
  }
}

TEST_CASE("slender demo on a few targets") {
  SlenderOptions opt;
  opt.targets = 8;
  opt.d_list = {1e-2};
  opt.run_adaptive = true;
  const SlenderResult r = demo_slender(opt);
  REQUIRE(r.records.size() == 2);
  for (const BenchRecord& rec : r.records) {
    CHECK(rec.targets == 8);
    CHECK(rec.max_rel_error < 1e-10);
    CHECK(rec.n_eval > 0);
  }
  CHECK_FALSE(r.slice.has_value());
}
