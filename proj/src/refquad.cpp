#include "linequad/refquad.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "linequad/rootfind.hpp"
#include "linequad/simd/dispatch.hpp"

namespace linequad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Row-wise barycentric interpolation matrix from the n Gauss nodes to the
// n Gauss nodes mapped into [lo, hi].
void child_matrix(int n, double lo, double hi, std::vector<double>& mat) {
  const GaussRule& rule = gauss_legendre(n);
  static thread_local std::vector<double> bw;
  static thread_local int bw_n = 0;
  if (bw_n != n) {
    bw = barycentric_weights(rule.nodes);
    bw_n = n;
  }
  mat.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double s = lo + 0.5 * (hi - lo) * (rule.nodes[i] + 1.0);
    double* row = mat.data() + static_cast<size_t>(i) * n;
    double den = 0.0;
    int exact = -1;
    for (int j = 0; j < n; ++j) {
      const double diff = s - rule.nodes[j];
      if (diff == 0.0) {
        exact = j;
        break;
      }
      row[j] = bw[j] / diff;
      den += row[j];
    }
    if (exact >= 0) {
      std::fill(row, row + n, 0.0);
      row[exact] = 1.0;
    } else {
      for (int j = 0; j < n; ++j) row[j] /= den;
    }
  }
}

struct Piece {
  double lo, hi;
  int depth;
};

}  // namespace

AdaptiveStats& AdaptiveStats::operator+=(const AdaptiveStats& o) {
  n_eval += o.n_eval;
  n_interp += o.n_interp;
  max_depth = std::max(max_depth, o.max_depth);
  t_eval += o.t_eval;
  t_interp += o.t_interp;
  return *this;
}

Vec3 adaptive_eval_slender(const SourceSet3D& sources, const Vec3& x, double eps,
                           AdaptiveStats& stats, int max_depth) {
  Vec3 total;
  std::vector<double> mat;
  std::vector<Piece> stack;
  for (size_t ip = 0; ip < sources.panels.size(); ++ip) {
    const Panel& p = sources.panels[ip];
    const std::span<const Vec3> force = sources.force[ip];
    if (min_node_distance(p, x) >= p.h) {
      total += slender_direct_panel(p, force, x, eps);
      continue;
    }
    const int n = p.n;
    const GaussRule& rule = gauss_legendre(n);
    std::array<double, max_gauss_order> yx, yy, yz, fx, fy, fz, ws;
    stack.clear();
    stack.push_back({-1.0, 0.0, 1});
    stack.push_back({0.0, 1.0, 1});
    while (!stack.empty()) {
      const Piece piece = stack.back();
      stack.pop_back();
      if (piece.depth > max_depth)
        throw std::domain_error("adaptive_eval_slender: depth cap exceeded (target on curve?)");
      const auto t0 = Clock::now();
      child_matrix(n, piece.lo, piece.hi, mat);
      const double half = 0.5 * (piece.hi - piece.lo);
      double h = 0.0, dmin2 = INFINITY;
      for (int i = 0; i < n; ++i) {
        const double* row = mat.data() + static_cast<size_t>(i) * n;
        Vec3 y, f;
        double sp = 0.0;
        for (int j = 0; j < n; ++j) {
          y += row[j] * p.y[j];
          f += row[j] * force[j];
          sp += row[j] * p.speed[j];
        }
        yx[i] = y.x; yy[i] = y.y; yz[i] = y.z;
        fx[i] = f.x; fy[i] = f.y; fz[i] = f.z;
        ws[i] = rule.weights[i] * half * sp;
        h += ws[i];
        dmin2 = std::min(dmin2, norm2(y - x));
      }
      stats.n_interp += n;
      stats.t_interp += seconds_since(t0);
      if (std::sqrt(dmin2) < h) {
        const double mid = 0.5 * (piece.lo + piece.hi);
        stack.push_back({piece.lo, mid, piece.depth + 1});
        stack.push_back({mid, piece.hi, piece.depth + 1});
        continue;
      }
      const auto t1 = Clock::now();
      double out[3] = {0.0, 0.0, 0.0};
      const double xv[3] = {x.x, x.y, x.z};
      simd::kernels().slender_direct_sum({yx.data(), yy.data(), yz.data(), fx.data(), fy.data(), fz.data(), n},
                                         ws.data(), xv, eps, out);
      total += Vec3{out[0], out[1], out[2]};
      stats.n_eval += n;
      stats.t_eval += seconds_since(t1);
      stats.max_depth = std::max(stats.max_depth, piece.depth);
    }
  }
  return total;
}

cplx adaptive_eval_2d(const SourceSet2D& sources, cplx zeta, const KernelSplit2D& split,
                      AdaptiveStats& stats, int max_depth) {
  cplx total = 0.0;
  std::vector<double> mat;
  std::vector<Piece> stack;
  const Vec3 x = from_complex(zeta);
  for (size_t ip = 0; ip < sources.panels.size(); ++ip) {
    const Panel& p = sources.panels[ip];
    const std::vector<cplx>& dens = sources.density[ip];
    const int n = p.n;
    const GaussRule& rule = gauss_legendre(n);
    stack.clear();
    stack.push_back({-1.0, 1.0, 0});
    std::vector<cplx> tau(n), dtau(n), rho(n);
    while (!stack.empty()) {
      const Piece piece = stack.back();
      stack.pop_back();
      if (piece.depth > max_depth)
        throw std::domain_error("adaptive_eval_2d: depth cap exceeded (target on curve?)");
      const auto t0 = Clock::now();
      const double half = 0.5 * (piece.hi - piece.lo);
      double h = 0.0, dmin = INFINITY;
      if (piece.depth == 0) {
        for (int i = 0; i < n; ++i) {
          tau[i] = p.tau(i);
          dtau[i] = p.dtau(i);
          rho[i] = dens[i];
        }
        h = p.h;
        dmin = min_node_distance(p, x);
      } else {
        child_matrix(n, piece.lo, piece.hi, mat);
        for (int i = 0; i < n; ++i) {
          const double* row = mat.data() + static_cast<size_t>(i) * n;
          cplx a = 0.0, b = 0.0, c = 0.0;
          for (int j = 0; j < n; ++j) {
            a += row[j] * p.tau(j);
            b += row[j] * p.dtau(j);
            c += row[j] * dens[j];
          }
          tau[i] = a;
          dtau[i] = half * b;
          rho[i] = c;
          h += rule.weights[i] * std::abs(dtau[i]);
          dmin = std::min(dmin, std::abs(a - zeta));
        }
        stats.n_interp += n;
        stats.t_interp += seconds_since(t0);
      }
      if (dmin < h) {
        const double mid = 0.5 * (piece.lo + piece.hi);
        stack.push_back({piece.lo, mid, piece.depth + 1});
        stack.push_back({mid, piece.hi, piece.depth + 1});
        continue;
      }
      const auto t1 = Clock::now();
      for (const auto& term : split.terms) {
        cplx acc = 0.0;
        for (int i = 0; i < n; ++i) {
          const cplx d = tau[i] - zeta;
          const cplx k = term.kind == SingularityKind::Log ? std::log(d) : std::pow(d, -term.m);
          const NodeData2D nd{tau[i], dtau[i], cplx(0.0, 1.0) * dtau[i] / std::abs(dtau[i]), rho[i]};
          acc += rule.weights[i] * dtau[i] * k * term.prefactor(nd, zeta);
        }
        total += term.scale * apply_post(term.post, acc);
      }
      if (piece.depth > 0) {
        stats.n_eval += n;
        stats.t_eval += seconds_since(t1);
      }
      stats.max_depth = std::max(stats.max_depth, piece.depth);
    }
  }
  return total;
}

}  // namespace linequad
