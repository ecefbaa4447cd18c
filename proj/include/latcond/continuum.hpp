#pragma once

#include <array>

#include "latcond/common.hpp"

namespace latcond {

// Band energy of the discrete Laplacian, E(p) = 2 sum_k (1 - cos p_k).
double band_energy(const std::array<double, 3>& p, int dim);

// Free diamagnetic coefficient as a Brillouin-zone integral
//   (2/(2pi)^d) int cos(p_1) / (1 + e^{beta E(p)}) dp
// by the midpoint rule on m_grid^d nodes (spectrally accurate).
double sigma_d_free(int dim, double beta, long m_grid);

// Free Fermi symbol <e_{x+dx}, f(Delta) e_x> = (1/(2pi)^d) int cos(p.dx) f(E(p)) dp.
double fermi_symbol_free(int dim, double beta, const std::array<long, 3>& dx,
                         long m_grid);

// Squared-Dirichlet window kernel
//   delta_l(u) = (2l+1)^{-d} prod_k [sin((2l+1)u_k/2) / sin(u_k/2)]^2,
// the Fourier weight of a cubic window of half-side l. Integrates to (2pi)^d.
double window_kernel(int half_side, int dim, const std::array<double, 3>& u);

// Midpoint-rule integral of the window kernel over the Brillouin zone.
double window_kernel_integral(int half_side, int dim, long m_grid);

// Momentum density of the current-current Duhamel form at window offset u:
//   (2/(2pi)^{2d}) int dk (1 - cos(2 k_1 + u_1))
//                     cos(t [E(k) - E(k+u)]) K(E(k), E(k+u)).
double xi_momentum_density(int dim, double beta, double t,
                           const std::array<double, 3>& u, long m_grid);

// Paramagnetic coefficient of the free lattice with current summed over a
// window of half-side l, as the exact Brillouin-zone pairing
//   Xi_l(t) = int delta_l(u) [d_t(u) - d_0(u)] du,
// evaluated with midpoint rules (m_outer^d x m_inner^d nodes).
double free_xi_bz(int dim, int half_side, double beta, double t, long m_outer,
                  long m_inner);

}  // namespace latcond
