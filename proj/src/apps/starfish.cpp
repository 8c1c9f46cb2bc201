#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "linequad/apps.hpp"
#include "linequad/parallel.hpp"

namespace linequad::apps {

double starfish_exact(cplx zeta) { return std::log(std::abs(cplx(3.0, 3.0) - zeta)); }

StarfishProblem solve_starfish(double eps_panel, int n) {
  const ParamCurve curve = starfish_curve();
  StarfishProblem prob;
  prob.sources.panels = adaptive_panelize(curve, eps_panel, n);
  const auto& panels = prob.sources.panels;
  std::vector<cplx> tau, dtau, ddtau;
  std::vector<double> w;
  for (const Panel& p : panels) {
    for (int j = 0; j < p.n; ++j) {
      tau.push_back(p.tau(j));
      dtau.push_back(p.dtau(j));
      ddtau.push_back(p.ddtau(j));
      w.push_back(p.w[j]);
    }
  }
  const int N = static_cast<int>(tau.size());
  prob.unknowns = N;
  // Interior limit of the double layer: -pi rho + K rho = u_e on the boundary.
  Eigen::MatrixXd A(N, N);
  Eigen::VectorXd rhs(N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (i == j)
        A(i, j) = -std::imag(ddtau[i] / (2.0 * dtau[i])) * w[i] - pi;
      else
        A(i, j) = -std::imag(dtau[j] / (tau[j] - tau[i])) * w[j];
    }
    rhs(i) = starfish_exact(tau[i]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd rho = lu.solve(rhs);
  if (!rho.allFinite()) throw std::runtime_error("starfish: linear solve failed");
  int offset = 0;
  for (const Panel& p : panels) {
    std::vector<cplx> d(p.n);
    for (int j = 0; j < p.n; ++j) d[j] = rho(offset + j);
    prob.sources.density.push_back(std::move(d));
    offset += p.n;
  }
  return prob;
}

ErrorGrid demo_starfish(const StarfishOptions& opt) {
  StarfishProblem prob = solve_starfish(opt.eps_panel, opt.n);
  return demo_starfish(opt, prob);
}

ErrorGrid demo_starfish(const StarfishOptions& opt, const StarfishProblem& problem) {
  SourceSet2D src = problem.sources;
  if (opt.mode != Upsampling::None && src.fine.size() != src.panels.size()) prepare_fine(src, 2 * opt.n);
  const QuadConfig cfg = QuadConfig::from_tolerance(opt.tol, opt.n, opt.mode);
  const KernelSplit2D split = laplace_dlp_2d();

  ErrorGrid grid;
  grid.dim = 2;
  grid.nx = opt.grid.nx;
  grid.ny = opt.grid.ny;
  std::vector<cplx> targets;
  std::vector<double> dist;
  if (opt.grid_kind == StarfishGrid::Global) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double x = -1.3 + 2.6 * (i + 0.5) / grid.nx;
        const double y = -1.3 + 2.6 * (j + 0.5) / grid.ny;
        const cplx z(x, y);
        const double r = 1.0 + 0.3 * std::cos(5.0 * std::arg(z));
        if (std::abs(z) < r) targets.push_back(z);
      }
    }
  } else {
    const ParamCurve curve = starfish_curve();
    for (int j = 0; j < grid.ny; ++j) {
      double im;
      const double frac = grid.ny > 1 ? static_cast<double>(j) / (grid.ny - 1) : 0.0;
      if (opt.grid_kind == StarfishGrid::Near)
        im = opt.d_min + (0.15 - opt.d_min) * frac;
      else
        im = opt.d_min * std::pow(0.15 / opt.d_min, frac);
      for (int i = 0; i < grid.nx; ++i) {
        const double re = pi * (1.66 + 0.10 * (grid.nx > 1 ? static_cast<double>(i) / (grid.nx - 1) : 0.0));
        const cplx t(re, im);
        const cplx z = (1.0 + 0.3 * std::cos(5.0 * t)) * std::exp(cplx(0.0, 1.0) * t);
        targets.push_back(z);
        dist.push_back(im);
      }
    }
  }
  const size_t count = targets.size();
  std::vector<double> u(count), ue(count);
  parallel_for(count, [&](size_t k) {
    u[k] = near_eval_2d(src, targets[k], split, opt.scheme, cfg).real();
    ue[k] = starfish_exact(targets[k]);
  });
  double umax = 0.0;
  for (double v : ue) umax = std::max(umax, std::abs(v));
  grid.x.resize(count);
  grid.y.resize(count);
  grid.err.resize(count);
  for (size_t k = 0; k < count; ++k) {
    grid.x[k] = targets[k].real();
    grid.y[k] = targets[k].imag();
    grid.err[k] = std::abs(u[k] - ue[k]) / umax;
  }
  grid.dist = std::move(dist);
  grid.scheme = std::string(to_string(opt.scheme));
  const char* kind = opt.grid_kind == StarfishGrid::Global ? "global"
                     : opt.grid_kind == StarfishGrid::Near ? "near"
                                                           : "near-log";
  grid.meta = {{"experiment", "starfish"},
               {"eps_panel", std::to_string(opt.eps_panel)},
               {"panels", std::to_string(problem.sources.panels.size())},
               {"n", std::to_string(opt.n)},
               {"mode", std::string(to_string(opt.mode))},
               {"grid", kind},
               {"rho_eps", std::to_string(cfg.rho_eps)}};
  return grid;
}

}  // namespace linequad::apps
