#include "linequad/specialquad.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "linequad/recur2d.hpp"
#include "linequad/recur3d.hpp"
#include "linequad/simd/dispatch.hpp"
#include "linequad/vandermonde.hpp"

namespace linequad {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

void check_kernel_request(int max_m) {
  if (max_m < 0 || max_m > 8) throw std::invalid_argument("weights: unsupported power " + std::to_string(max_m));
}

// Principal log of a ratio, unwrapped so the phase is continuous from node to node.
void unwrapped_log_ratio(const Panel& panel, cplx zeta, cplx t0, std::vector<cplx>& out) {
  out.resize(panel.n);
  double prev = 0.0;
  for (int j = 0; j < panel.n; ++j) {
    cplx v = std::log((panel.tau(j) - zeta) / (panel.t[j] - t0));
    if (j > 0) {
      const double jump = v.imag() - prev;
      v.imag(v.imag() - 2.0 * pi * std::round(jump / (2.0 * pi)));
    }
    prev = v.imag();
    out[j] = v;
  }
}

NodeData2D node_data(const Panel& p, std::span<const cplx> density, int j) {
  const cplx d = p.dtau(j);
  return {p.tau(j), d, cplx(0.0, 1.0) * d / std::abs(d), density[j]};
}

cplx apply_weights(const Panel& panel, std::span<const cplx> density, cplx zeta,
                   const KernelSplit2D& split, const Weights2D& w) {
  cplx total = 0.0;
  for (const auto& term : split.terms) {
    const std::vector<cplx>& lam =
        term.kind == SingularityKind::Log ? w.log : w.power.at(term.m - 1);
    cplx acc = 0.0;
    for (int j = 0; j < panel.n; ++j) acc += lam[j] * term.prefactor(node_data(panel, density, j), zeta);
    total += term.scale * apply_post(term.post, acc);
  }
  return total;
}

// Direct rule with the power-1 terms routed through the vectorized Cauchy sum.
cplx direct_eval_2d(const Panel& panel, std::span<const cplx> density, cplx zeta,
                    const KernelSplit2D& split) {
  const int n = panel.n;
  std::array<double, 4 * max_gauss_order> buf;
  double* cre = buf.data();
  double* cim = cre + n;
  double* tre = cim + n;
  double* tim = tre + n;
  for (int j = 0; j < n; ++j) {
    tre[j] = panel.y[j].x;
    tim[j] = panel.y[j].y;
  }
  cplx total = 0.0;
  for (const auto& term : split.terms) {
    cplx acc = 0.0;
    if (term.kind == SingularityKind::Power && term.m == 1) {
      for (int j = 0; j < n; ++j) {
        const cplx c = panel.w[j] * panel.dtau(j) * term.prefactor(node_data(panel, density, j), zeta);
        cre[j] = c.real();
        cim[j] = c.imag();
      }
      acc = simd::kernels().cauchy_sum(cre, cim, tre, tim, n, zeta);
    } else {
      for (int j = 0; j < n; ++j) {
        const cplx d = panel.tau(j) - zeta;
        const cplx k = term.kind == SingularityKind::Log ? std::log(d) : std::pow(d, -term.m);
        acc += panel.w[j] * panel.dtau(j) * k * term.prefactor(node_data(panel, density, j), zeta);
      }
    }
    total += term.scale * apply_post(term.post, acc);
  }
  return total;
}

struct Fine2D {
  Panel panel;
  std::vector<cplx> density;
};

Fine2D make_fine(const Panel& panel, std::span<const cplx> density, int m) {
  return {upsample_panel(panel, m), upsample_samples(panel.n, density, m)};
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "direct") return Scheme::Direct;
  if (name == "ho") return Scheme::HO;
  if (name == "ssq") return Scheme::SSQ;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Direct: return "direct";
    case Scheme::HO: return "ho";
    case Scheme::SSQ: return "ssq";
  }
  return "direct";
}

std::vector<double> direct_weights(const Panel& panel, const Vec3& x,
                                   const std::function<double(const Vec3&, const Vec3&)>& kernel) {
  std::vector<double> lam(panel.n);
  for (int j = 0; j < panel.n; ++j) {
    if (norm2(panel.y[j] - x) == 0.0) throw std::domain_error("direct_weights: target on a node");
    lam[j] = panel.w[j] * panel.speed[j] * kernel(x, panel.y[j]);
  }
  return lam;
}

Weights2D direct_weights_2d(const Panel& panel, cplx zeta, int max_m, bool need_log) {
  check_kernel_request(max_m);
  Weights2D w;
  w.scheme = Scheme::Direct;
  w.power.assign(max_m, std::vector<cplx>(panel.n));
  if (need_log) w.log.resize(panel.n);
  for (int j = 0; j < panel.n; ++j) {
    const cplx d = panel.tau(j) - zeta;
    if (d == 0.0) throw std::domain_error("direct_weights_2d: target on a node");
    const cplx base = panel.w[j] * panel.dtau(j);
    cplx inv = 1.0 / d, acc = base;
    for (int m = 1; m <= max_m; ++m) {
      acc *= inv;
      w.power[m - 1][j] = acc;
    }
    if (need_log) w.log[j] = base * std::log(d);
  }
  return w;
}

Weights2D ho_weights_2d(const Panel& panel, cplx zeta, int max_m, bool need_log) {
  check_kernel_request(max_m);
  const int n = panel.n;
  const ComplexPanelFrame frame = endpoint_frame(panel);
  const cplx z = frame.forward(zeta);
  const int N = winding_number(panel, zeta);
  std::vector<cplx> nodes(n);
  for (int j = 0; j < n; ++j) nodes[j] = frame.forward(panel.tau(j));

  Weights2D w;
  w.scheme = Scheme::HO;
  std::vector<cplx> p1(n + 1), pm(n), prev;
  p1_into(z, n + 1, N, p1.data());
  const std::span<const cplx> xs(nodes);
  prev.assign(p1.begin(), p1.begin() + n);
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) {
      pm_into(z, m, n, prev.data(), pm.data());
      prev = pm;
    }
    std::vector<cplx> lam = prev;
    bjorck_pereyra_dual(xs, std::span<cplx>(lam));
    const cplx factor = std::pow(frame.scale, 1 - m);
    for (cplx& v : lam) v *= factor;
    w.power.push_back(std::move(lam));
  }
  if (need_log) {
    std::vector<cplx> q(n);
    q_into(z, n, N, p1.data(), q.data());
    bjorck_pereyra_dual(xs, std::span<cplx>(q));
    const cplx log_s0 = std::log(frame.scale);
    for (int j = 0; j < n; ++j) q[j] = frame.scale * q[j] + log_s0 * panel.w[j] * panel.dtau(j);
    w.log = std::move(q);
  }
  return w;
}

Weights2D ssq_weights_2d(const Panel& panel, cplx zeta, cplx t0, int max_m, bool need_log) {
  check_kernel_request(max_m);
  const int n = panel.n;
  const GaussDualSolver& solver = gauss_dual_solver(n);
  Weights2D w;
  w.scheme = Scheme::SSQ;
  std::vector<cplx> p1(n + 1), prev, pm(n);
  p1_into(t0, n + 1, 0, p1.data());
  prev.assign(p1.begin(), p1.begin() + n);

  std::vector<cplx> ratio(n);  // (t_j - t0) / (tau_j - zeta)
  for (int j = 0; j < n; ++j) ratio[j] = (panel.t[j] - t0) / (panel.tau(j) - zeta);

  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) {
      pm_into(t0, m, n, prev.data(), pm.data());
      prev = pm;
    }
    std::vector<cplx> lam = prev;
    solver.solve(lam.data());
    for (int j = 0; j < n; ++j) lam[j] *= panel.dtau(j) * std::pow(ratio[j], m);
    w.power.push_back(std::move(lam));
  }
  if (need_log) {
    std::vector<cplx> q(n), logs;
    q_into(t0, n, 0, p1.data(), q.data());
    solver.solve(q.data());
    unwrapped_log_ratio(panel, zeta, t0, logs);
    for (int j = 0; j < n; ++j) q[j] = panel.dtau(j) * (q[j] + panel.w[j] * logs[j]);
    w.log = std::move(q);
  }
  return w;
}

Weights3D direct_weights_3d(const Panel& panel, const Vec3& x) {
  Weights3D w;
  w.w1.resize(panel.n);
  w.w3.resize(panel.n);
  w.w5.resize(panel.n);
  for (int j = 0; j < panel.n; ++j) {
    const double r2 = norm2(panel.y[j] - x);
    if (r2 == 0.0) throw std::domain_error("direct_weights_3d: target on a node");
    const double base = panel.w[j] * panel.speed[j] / std::sqrt(r2);
    w.w1[j] = base;
    w.w3[j] = base / r2;
    w.w5[j] = base / (r2 * r2);
  }
  return w;
}

Weights3D ssq_weights_3d(const Panel& panel, const Vec3& x, cplx t0, int max_m) {
  const int n = panel.n;
  if (n > max_gauss_order) throw std::invalid_argument("ssq_weights_3d: too many nodes");
  std::array<double, max_gauss_order> p1, p3, p5;
  pvectors_into(t0, n, p1.data(), max_m >= 3 ? p3.data() : nullptr, max_m >= 5 ? p5.data() : nullptr);
  // Batched dual solve: right-hand sides interleaved per node.
  std::array<double, 4 * max_gauss_order> z{};
  for (int i = 0; i < n; ++i) {
    z[4 * i] = p1[i];
    z[4 * i + 1] = max_m >= 3 ? p3[i] : 0.0;
    z[4 * i + 2] = max_m >= 5 ? p5[i] : 0.0;
  }
  gauss_dual_solver(n).solve4(z.data());
  Weights3D w;
  w.w1.resize(n);
  if (max_m >= 3) w.w3.resize(n);
  if (max_m >= 5) w.w5.resize(n);
  for (int i = 0; i < n; ++i) {
    w.w1[i] = z[4 * i];
    if (max_m >= 3) w.w3[i] = z[4 * i + 1];
    if (max_m >= 5) w.w5[i] = z[4 * i + 2];
  }
  std::array<double, max_gauss_order> yx, yy, yz;
  for (int j = 0; j < n; ++j) {
    yx[j] = panel.y[j].x;
    yy[j] = panel.y[j].y;
    yz[j] = panel.y[j].z;
  }
  const double xv[3] = {x.x, x.y, x.z};
  simd::kernels().ssq3d_correct(panel.t.data(), t0, yx.data(), yy.data(), yz.data(), panel.speed.data(),
                                xv, n, w.w1.data(), max_m >= 3 ? w.w3.data() : nullptr,
                                max_m >= 5 ? w.w5.data() : nullptr);
  return w;
}

void prepare_fine(SourceSet2D& sources, int m) {
  sources.fine.clear();
  sources.fine_density.clear();
  for (size_t i = 0; i < sources.panels.size(); ++i) {
    const Panel& p = sources.panels[i];
    sources.fine.push_back(upsample_panel(p, m));
    sources.fine_density.push_back(upsample_samples(p.n, std::span<const cplx>(sources.density[i]), m));
  }
}

void prepare_fine(SourceSet3D& sources, int m) {
  sources.fine.clear();
  sources.fine_force.clear();
  for (size_t i = 0; i < sources.panels.size(); ++i) {
    const Panel& p = sources.panels[i];
    sources.fine.push_back(upsample_panel(p, m));
    sources.fine_force.push_back(upsample_samples(p.n, std::span<const Vec3>(sources.force[i]), m));
  }
}

cplx panel_eval_2d(const Panel& panel, std::span<const cplx> density, cplx zeta,
                   const KernelSplit2D& split, Scheme scheme, const QuadConfig& cfg,
                   NearEvalStats* stats, const Panel* fine, std::span<const cplx> fine_density) {
  const Vec3 x = from_complex(zeta);
  if (scheme == Scheme::Direct) {
    if (stats) stats->far.fetch_add(1, std::memory_order_relaxed);
    return direct_eval_2d(panel, density, zeta, split);
  }
  const auto t_start = Clock::now();
  const TargetClass cls = classify_target(panel, x, cfg);
  if (cls.root_failed && stats) stats->root_failures.fetch_add(1, std::memory_order_relaxed);
  if (cls.kind == TargetKind::Far) {
    if (stats) stats->far.fetch_add(1, std::memory_order_relaxed);
    return direct_eval_2d(panel, density, zeta, split);
  }

  const int m = 2 * panel.n;
  const bool upsample = cls.kind == TargetKind::NearDirectUpsampled || cfg.mode != Upsampling::None;
  Fine2D local;
  const Panel* src = &panel;
  std::span<const cplx> dens = density;
  if (upsample) {
    if (fine && fine->n == m && fine_density.size() == static_cast<size_t>(m)) {
      src = fine;
      dens = fine_density;
    } else {
      local = make_fine(panel, density, m);
      src = &local.panel;
      dens = local.density;
    }
  }
  if (cls.kind == TargetKind::NearDirectUpsampled) {
    if (stats) stats->near_direct.fetch_add(1, std::memory_order_relaxed);
    return direct_eval_2d(*src, dens, zeta, split);
  }
  if (stats) stats->special.fetch_add(1, std::memory_order_relaxed);
  const int max_m = split.max_power();
  const bool need_log = split.has_log();
  const Weights2D w = scheme == Scheme::SSQ
                          ? ssq_weights_2d(*src, zeta, cls.preimage->t0, max_m, need_log)
                          : ho_weights_2d(*src, zeta, max_m, need_log);
  if (stats) stats->weight_ns.fetch_add(elapsed_ns(t_start), std::memory_order_relaxed);
  return apply_weights(*src, dens, zeta, split, w);
}

cplx near_eval_2d(const SourceSet2D& sources, cplx zeta, const KernelSplit2D& split, Scheme scheme,
                  const QuadConfig& cfg, NearEvalStats* stats) {
  cplx total = 0.0;
  const bool have_fine = sources.fine.size() == sources.panels.size();
  for (size_t i = 0; i < sources.panels.size(); ++i) {
    if (have_fine)
      total += panel_eval_2d(sources.panels[i], sources.density[i], zeta, split, scheme, cfg, stats,
                             &sources.fine[i], sources.fine_density[i]);
    else
      total += panel_eval_2d(sources.panels[i], sources.density[i], zeta, split, scheme, cfg, stats);
  }
  return total;
}

namespace {

struct NodeSoA {
  std::array<double, max_gauss_order> yx, yy, yz, fx, fy, fz;
  simd::NodeArrays view(int n) const {
    return {yx.data(), yy.data(), yz.data(), fx.data(), fy.data(), fz.data(), n};
  }
};

void load_soa(const Panel& p, std::span<const Vec3> force, NodeSoA& s) {
  for (int j = 0; j < p.n; ++j) {
    s.yx[j] = p.y[j].x;
    s.yy[j] = p.y[j].y;
    s.yz[j] = p.y[j].z;
    s.fx[j] = force[j].x;
    s.fy[j] = force[j].y;
    s.fz[j] = force[j].z;
  }
}

}  // namespace

Vec3 slender_direct_panel(const Panel& panel, std::span<const Vec3> force, const Vec3& x, double eps) {
  NodeSoA s;
  load_soa(panel, force, s);
  std::array<double, max_gauss_order> ws;
  for (int j = 0; j < panel.n; ++j) ws[j] = panel.w[j] * panel.speed[j];
  double out[3] = {0.0, 0.0, 0.0};
  const double xv[3] = {x.x, x.y, x.z};
  simd::kernels().slender_direct_sum(s.view(panel.n), ws.data(), xv, eps, out);
  return {out[0], out[1], out[2]};
}

Vec3 near_eval_slender(const SourceSet3D& sources, const Vec3& x, double eps, Scheme scheme,
                       const QuadConfig& cfg, NearEvalStats* stats) {
  if (scheme == Scheme::HO) throw std::invalid_argument("near_eval_slender: HO is a 2D scheme");
  Vec3 total;
  const bool have_fine = sources.fine.size() == sources.panels.size();
  const double xv[3] = {x.x, x.y, x.z};
  for (size_t i = 0; i < sources.panels.size(); ++i) {
    const Panel& panel = sources.panels[i];
    const std::span<const Vec3> force = sources.force[i];
    // Near-field counters cover panels routed to the special path; panels
    // evaluated with their own Gauss-Legendre rule are far field.
    const double D = cfg.distance_multiplier * panel.h;
    if (scheme == Scheme::Direct || nodes_beyond(panel, x, D) || min_node_distance(panel, x) >= D) {
      if (stats) stats->far.fetch_add(1, std::memory_order_relaxed);
      total += slender_direct_panel(panel, force, x, eps);
      continue;
    }
    const auto t_start = Clock::now();
    const TargetClass cls = classify_target(panel, x, cfg);
    if (cls.root_failed && stats) stats->root_failures.fetch_add(1, std::memory_order_relaxed);
    if (cls.kind == TargetKind::Far) {
      if (stats) stats->far.fetch_add(1, std::memory_order_relaxed);
      if (stats)
        stats->weight_ns.fetch_add(elapsed_ns(t_start), std::memory_order_relaxed);
      total += slender_direct_panel(panel, force, x, eps);
      continue;
    }
    const int m = (cfg.always_upsample_3d || cfg.mode != Upsampling::None) ? 2 * panel.n : panel.n;
    Panel local;
    std::vector<Vec3> local_force;
    const Panel* src = &panel;
    std::span<const Vec3> f = force;
    if (m != panel.n) {
      if (have_fine && sources.fine[i].n == m) {
        src = &sources.fine[i];
        f = sources.fine_force[i];
      } else {
        local = upsample_panel(panel, m);
        local_force = upsample_samples(panel.n, force, m);
        src = &local;
        f = local_force;
      }
    }
    if (cls.kind == TargetKind::NearDirectUpsampled) {
      if (stats) stats->near_direct.fetch_add(1, std::memory_order_relaxed);
      const auto t_eval = Clock::now();
      total += slender_direct_panel(*src, f, x, eps);
      if (stats) {
        stats->near_kernel_evals.fetch_add(src->n, std::memory_order_relaxed);
        stats->eval_ns.fetch_add(elapsed_ns(t_eval), std::memory_order_relaxed);
      }
      continue;
    }
    if (stats) stats->special.fetch_add(1, std::memory_order_relaxed);
    const Weights3D w = ssq_weights_3d(*src, x, cls.preimage->t0, 5);
    const auto t_eval = Clock::now();
    NodeSoA s;
    load_soa(*src, f, s);
    double out[3] = {0.0, 0.0, 0.0};
    simd::kernels().slender_weighted_sum(s.view(src->n), w.w1.data(), w.w3.data(), w.w5.data(), xv, eps,
                                         out);
    total += Vec3{out[0], out[1], out[2]};
    if (stats) {
      stats->weight_ns.fetch_add(std::chrono::duration_cast<std::chrono::nanoseconds>(t_eval - t_start).count(),
                                 std::memory_order_relaxed);
      stats->eval_ns.fetch_add(elapsed_ns(t_eval), std::memory_order_relaxed);
      stats->near_kernel_evals.fetch_add(src->n, std::memory_order_relaxed);
    }
  }
  return total;
}

}  // namespace linequad
