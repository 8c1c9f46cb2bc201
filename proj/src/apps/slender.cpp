#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "linequad/apps.hpp"
#include "linequad/parallel.hpp"
#include "linequad/refquad.hpp"

namespace linequad::apps {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

QuadConfig slender_config(double tol) {
  QuadConfig cfg;
  cfg.n = 16;
  if (tol > 0.0) cfg = QuadConfig::from_tolerance(tol, 2 * cfg.n, Upsampling::None);
  cfg.n = 16;
  cfg.always_upsample_3d = true;
  return cfg;
}

double max_norm(const std::vector<Vec3>& v) {
  double m = 0.0;
  for (const Vec3& a : v) m = std::max(m, norm(a));
  return m;
}

}  // namespace

SourceSet3D slender_sources(const ParamCurve& curve, double eps_panel, int n) {
  SourceSet3D src;
  src.panels = adaptive_panelize(curve, eps_panel, n);
  for (const Panel& p : src.panels) src.force.push_back(p.y);
  return src;
}

std::vector<Vec3> slender_targets(const ParamCurve& curve, double d, int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("slender_targets: negative count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> param(curve.t_begin, curve.t_end);
  std::normal_distribution<double> gauss;
  std::vector<Vec3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = param(rng);
    const Vec3 y = curve.g(t), tan = curve.dg(t);
    const Vec3 that = (1.0 / norm(tan)) * tan;
    Vec3 v;
    do {
      v = Vec3{gauss(rng), gauss(rng), gauss(rng)};
      v -= dot(v, that) * that;
    } while (norm(v) < 1e-3);
    out.push_back(y + (d / norm(v)) * v);
  }
  return out;
}

SlenderResult demo_slender(const SlenderOptions& opt) {
  if (opt.targets < 1) throw std::invalid_argument("slender: need at least one target");
  const ParamCurve curve = squiggle_curve();
  SourceSet3D src = slender_sources(curve, opt.eps_panel, 16);
  prepare_fine(src, 32);
  const SourceSet3D ref = slender_sources(curve, opt.ref_eps_panel, opt.ref_n);
  const QuadConfig cfg = slender_config(opt.tol);
  const double eps = opt.fibre_eps;

  SlenderResult result;
  for (double d : opt.d_list) {
    const std::vector<Vec3> xs = slender_targets(curve, d, opt.targets, opt.seed);
    const size_t count = xs.size();
    std::vector<Vec3> u_ssq(count), u_ad(count), u_ref(count);
    NearEvalStats stats;
    std::vector<AdaptiveStats> ad_stats(count);
    parallel_for(count, [&](size_t i) {
      u_ssq[i] = near_eval_slender(src, xs[i], eps, Scheme::SSQ, cfg, &stats);
      AdaptiveStats ref_stats;
      u_ref[i] = adaptive_eval_slender(ref, xs[i], eps, ref_stats);
      if (opt.run_adaptive) u_ad[i] = adaptive_eval_slender(src, xs[i], eps, ad_stats[i]);
    });
    const double scale = max_norm(u_ref);
    auto max_err = [&](const std::vector<Vec3>& u) {
      double m = 0.0;
      for (size_t i = 0; i < count; ++i) m = std::max(m, norm(u[i] - u_ref[i]));
      return m / scale;
    };
    if (opt.run_adaptive) {
      AdaptiveStats total;
      for (const AdaptiveStats& s : ad_stats) total += s;
      BenchRecord rec;
      rec.d = d;
      rec.eps_panel = opt.eps_panel;
      rec.scheme = "adaptive";
      rec.n_eval = total.n_eval;
      rec.t_eval = total.t_eval;
      rec.t_weights = total.t_interp;
      rec.max_rel_error = max_err(u_ad);
      rec.targets = static_cast<int>(count);
      rec.seed = opt.seed;
      result.records.push_back(rec);
    }
    BenchRecord rec;
    rec.d = d;
    rec.eps_panel = opt.eps_panel;
    rec.scheme = "ssq";
    rec.n_eval = stats.near_kernel_evals.load();
    rec.t_eval = 1e-9 * static_cast<double>(stats.eval_ns.load());
    rec.t_weights = 1e-9 * static_cast<double>(stats.weight_ns.load());
    rec.max_rel_error = max_err(u_ssq);
    rec.targets = static_cast<int>(count);
    rec.seed = opt.seed;
    result.records.push_back(rec);
  }

  if (opt.slice) {
    ErrorGrid grid;
    grid.dim = 3;
    grid.nx = opt.grid.nx;
    grid.ny = opt.grid.ny;
    const size_t count = static_cast<size_t>(grid.nx) * grid.ny;
    grid.x.resize(count);
    grid.y.assign(count, 0.25);
    grid.z.resize(count);
    grid.err.resize(count);
    grid.dist.resize(count);
    std::vector<Vec3> u(count), uref(count);
    parallel_for(count, [&](size_t idx) {
      const int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
      const double x = grid.nx > 1 ? -1.4 + 2.8 * i / (grid.nx - 1) : 0.0;
      const double z = grid.ny > 1 ? -1.4 + 2.8 * j / (grid.ny - 1) : 0.0;
      const Vec3 p{x, 0.25, z};
      grid.x[idx] = x;
      grid.z[idx] = z;
      double dmin = INFINITY;
      for (const Panel& panel : src.fine) dmin = std::min(dmin, min_node_distance(panel, p));
      grid.dist[idx] = dmin;
      u[idx] = near_eval_slender(src, p, eps, Scheme::SSQ, cfg);
      AdaptiveStats s;
      uref[idx] = adaptive_eval_slender(ref, p, eps, s);
    });
    const double scale = max_norm(uref);
    for (size_t k = 0; k < count; ++k) grid.err[k] = norm(u[k] - uref[k]) / scale;
    grid.scheme = "ssq";
    grid.meta = {{"experiment", "slender"},
                 {"eps_panel", std::to_string(opt.eps_panel)},
                 {"fibre_eps", std::to_string(eps)},
                 {"panels", std::to_string(src.panels.size())},
                 {"slice", "y=0.25"}};
    result.slice = std::move(grid);
  }
  return result;
}

ThroughputResult measure_throughput(double d, int targets, std::uint64_t seed) {
  const ParamCurve curve = squiggle_curve();
  SourceSet3D src = slender_sources(curve, 1e-10, 16);
  prepare_fine(src, 32);
  const std::vector<Vec3> xs = slender_targets(curve, d, targets, seed);
  const QuadConfig cfg = slender_config(0.0);
  std::atomic<long long> pairs{0};
  std::vector<double> sink(xs.size(), 0.0);
  const auto t0 = Clock::now();
  parallel_for(xs.size(), [&](size_t i) {
    double acc = 0.0;
    for (size_t ip = 0; ip < src.panels.size(); ++ip) {
      const Panel& panel = src.panels[ip];
      const double D = cfg.distance_multiplier * panel.h;
      if (nodes_beyond(panel, xs[i], D) || min_node_distance(panel, xs[i]) >= D) continue;
      const TargetClass cls = classify_target(panel, xs[i], cfg);
      if (cls.kind != TargetKind::Special) continue;
      const Weights3D w = ssq_weights_3d(src.fine[ip], xs[i], cls.preimage->t0, 5);
      acc += w.w5.back();
      pairs.fetch_add(1, std::memory_order_relaxed);
    }
    sink[i] = acc;
  });
  const double elapsed = seconds_since(t0);
  ThroughputResult r;
  r.targets_per_second = elapsed > 0.0 ? static_cast<double>(xs.size()) / elapsed : 0.0;
  r.special_pairs = pairs.load();
  r.threads = thread_count();
  return r;
}

}  // namespace linequad::apps
