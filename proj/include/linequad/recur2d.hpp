#pragma once

#include <span>
#include <vector>

#include "linequad/geometry.hpp"

namespace linequad {

/// p^1_k(z) = int_{-1}^{1} t^{k-1} / (t - z) dt for k = 1..n, continued along
/// a panel that winds N times around z relative to its chord.
std::vector<cplx> p_m1(cplx z, int n, int winding = 0);

/// p^m_k(z) = int t^{k-1} / (t - z)^m dt, k = 1..n, from the m-1 vector.
std::vector<cplx> p_m(cplx z, int m, int n, std::span<const cplx> lower);

/// q_k(z) = int t^{k-1} log(t - z) dt, k = 1..n, from p^1 of length n + 1.
/// The logarithm is continued from its principal value at t = -1.
std::vector<cplx> q_log(cplx z, int n, std::span<const cplx> p1, int winding = 0);

/// Winding number of the closed loop formed by the panel traversed forward and
/// its chord traversed backward, around zeta. Evaluated on the Legendre fit.
/// Throws std::domain_error when zeta lies numerically on the loop.
int winding_number(const Panel& panel, cplx zeta);

/// Allocation-free kernels used by the quadrature weights. Outputs have length n.
void p1_into(cplx z, int n, int winding, cplx* out);
void pm_into(cplx z, int m, int n, const cplx* lower, cplx* out);
void q_into(cplx z, int n, int winding, const cplx* p1, cplx* out);

}  // namespace linequad
