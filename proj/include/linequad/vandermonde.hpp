#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "linequad/types.hpp"

namespace linequad {

// Vandermonde systems with A_ij = x_i^j (i, j = 0..n-1), solved in O(n^2) by
// the Bjorck-Pereyra recurrences.

/// Solves A c = f in place (interpolation: coefficients from node values).
template <class Node, class Value>
void bjorck_pereyra_primal(std::span<const Node> x, std::span<Value> c) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("bjorck_pereyra: size mismatch");
  for (int k = 0; k + 1 < n; ++k) {
    for (int i = n - 1; i > k; --i) {
      const Node diff = x[i] - x[i - k - 1];
      if (diff == Node{}) throw std::invalid_argument("bjorck_pereyra: repeated node");
      c[i] = (c[i] - c[i - 1]) / diff;
    }
  }
  for (int k = n - 2; k >= 0; --k) {
    for (int i = k; i + 1 < n; ++i) c[i] -= x[k] * c[i + 1];
  }
}

/// Solves A^T z = b in place (weights from moments).
template <class Node, class Value>
void bjorck_pereyra_dual(std::span<const Node> x, std::span<Value> z) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("bjorck_pereyra: size mismatch");
  for (int k = 0; k + 1 < n; ++k) {
    for (int i = n - 1; i > k; --i) z[i] -= x[k] * z[i - 1];
  }
  for (int k = n - 2; k >= 0; --k) {
    for (int i = k + 1; i < n; ++i) {
      const Node diff = x[i] - x[i - k - 1];
      if (diff == Node{}) throw std::invalid_argument("bjorck_pereyra: repeated node");
      z[i] /= diff;
    }
    for (int i = k; i + 1 < n; ++i) z[i] -= z[i + 1];
  }
}

/// Convenience wrapper returning the solution of A c = f or A^T c = f.
template <class Node, class Value>
std::vector<Value> vandermonde_solve(std::span<const Node> nodes, std::span<const Value> rhs,
                                     bool transposed) {
  std::vector<Value> out(rhs.begin(), rhs.end());
  if (transposed)
    bjorck_pereyra_dual(nodes, std::span<Value>(out));
  else
    bjorck_pereyra_primal(nodes, std::span<Value>(out));
  return out;
}

/// Dual solver for the fixed n-point Gauss-Legendre nodes with the node
/// differences inverted once. The recurrences run over the nodes in Leja
/// order, which keeps the residual near round-off; in ascending order it
/// grows to ~1e-12 relative at n = 16. Results are returned in the original
/// (ascending) node order.
class GaussDualSolver {
 public:
  explicit GaussDualSolver(int n);

  int size() const { return n_; }
  void solve(double* z) const;
  void solve(cplx* z) const;
  /// Four right-hand sides stored interleaved: z[4 * i + r].
  void solve4(double* z) const;

  /// Nodes and inverted differences in solve (Leja) order, as used by the
  /// raw kernels; order()[i] is the ascending index of nodes()[i].
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& inverse_differences() const { return inv_; }
  const std::vector<int>& order() const { return order_; }

 private:
  template <class Value>
  void solve_impl(Value* z) const;

  int n_;
  std::vector<double> x_;
  std::vector<double> inv_;  // row k (k = 0..n-2), entry i: 1 / (x_i - x_{i-k-1})
  std::vector<int> order_;
};

/// Cached solver per node count (thread-safe).
const GaussDualSolver& gauss_dual_solver(int n);

}  // namespace linequad
