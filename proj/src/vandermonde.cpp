#include "linequad/vandermonde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "linequad/geometry.hpp"
#include "linequad/simd/dispatch.hpp"

namespace linequad {

namespace {

/// Leja ordering: start at the node of largest modulus, then repeatedly take
/// the node maximising the product of distances to those already chosen.
std::vector<int> leja_order(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<int> order;
  std::vector<bool> used(n, false);
  std::vector<long double> prod(n, 1.0L);
  int next = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[next])) next = i;
  while (static_cast<int>(order.size()) < n) {
    order.push_back(next);
    used[next] = true;
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      prod[i] *= std::abs(static_cast<long double>(x[i]) - x[next]);
      if (best < 0 || prod[i] > prod[best]) best = i;
    }
    next = best;
  }
  return order;
}

}  // namespace

GaussDualSolver::GaussDualSolver(int n) : n_(n) {
  const std::vector<double>& ascending = gauss_legendre(n).nodes;
  order_ = leja_order(ascending);
  for (int i : order_) x_.push_back(ascending[i]);
  inv_.assign(static_cast<size_t>(n > 1 ? n - 1 : 0) * n, 0.0);
  for (int k = 0; k + 1 < n; ++k)
    for (int i = k + 1; i < n; ++i) inv_[static_cast<size_t>(k) * n + i] = 1.0 / (x_[i] - x_[i - k - 1]);
}

template <class Value>
void GaussDualSolver::solve_impl(Value* z) const {
  const int n = n_;
  for (int k = 0; k + 1 < n; ++k) {
    const double xk = x_[k];
    for (int i = n - 1; i > k; --i) z[i] -= xk * z[i - 1];
  }
  for (int k = n - 2; k >= 0; --k) {
    const double* inv = inv_.data() + static_cast<size_t>(k) * n;
    for (int i = k + 1; i < n; ++i) z[i] *= inv[i];
    for (int i = k; i + 1 < n; ++i) z[i] -= z[i + 1];
  }
  std::array<Value, max_gauss_order> tmp;
  std::copy(z, z + n, tmp.begin());
  for (int i = 0; i < n; ++i) z[order_[i]] = tmp[i];
}

void GaussDualSolver::solve(double* z) const { solve_impl(z); }
void GaussDualSolver::solve(cplx* z) const { solve_impl(z); }

void GaussDualSolver::solve4(double* z) const {
  simd::kernels().bp_dual4(x_.data(), inv_.data(), n_, z);
  std::array<double, 4 * max_gauss_order> tmp;
  std::copy(z, z + 4 * n_, tmp.begin());
  for (int i = 0; i < n_; ++i)
    for (int r = 0; r < 4; ++r) z[4 * order_[i] + r] = tmp[4 * i + r];
}

const GaussDualSolver& gauss_dual_solver(int n) {
  static std::array<std::once_flag, max_gauss_order + 1> flags;
  static std::array<std::unique_ptr<GaussDualSolver>, max_gauss_order + 1> solvers;
  if (n < 1 || n > max_gauss_order)
    throw std::invalid_argument("gauss_dual_solver: order out of range: " + std::to_string(n));
  std::call_once(flags[n], [n] { solvers[n] = std::make_unique<GaussDualSolver>(n); });
  return *solvers[n];
}

}  // namespace linequad
