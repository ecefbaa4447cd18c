#pragma once

#include "latcond/lattice.hpp"
#include "latcond/spectral.hpp"

namespace latcond {

// Current observable I = Im(a*(psi1) a(psi2)) on the one-particle space.
// Its quadratic-form matrix is (psi1 psi2^+ - psi2 psi1^+) / 2i.
struct CurrentObservable {
  CVec psi1, psi2;
};

CMat current_matrix(const CurrentObservable& cur);

// Bond current for the ordered pair (x, x - e_axis):
// I = -2 Im(a*_{x-e} a_x). Throws if the partner site leaves an open box.
CurrentObservable bond_current(const Box& box, long x_index, int axis);

// Heisenberg evolution of the pair by e^{i s H}: tau_s(I).
CurrentObservable evolve_current(const EigenSystem& es, double s,
                                 const CurrentObservable& cur);

// C_{t + i alpha}(x1, x2) = <e_{x2}, e^{-itH} F_alpha^beta(H) e_{x1}>
//                         = sum_i phi_i(x2) phi_i(x1) e^{-i t E_i} F_alpha^beta(E_i)
Cplx complex_time_correlator(const EigenSystem& es, double beta, double t,
                             double alpha, long x1, long x2);

// Wick 2x2 determinant combination over both S2 permutations:
// c_{t+ia}(x, y) = sum_{p,p'} eps_p eps_p'
//     C_{t+ia}(y^{p'(1)}, x^{p(1)}) * C_{-t+i(beta-a)}(x^{p(2)}, y^{p'(2)})
Cplx c_kernel(const EigenSystem& es, double beta, double t, double alpha,
              const std::array<long, 2>& x, const std::array<long, 2>& y);

// Analytic alpha-integral of c_kernel over [0, beta]; used by the per-pair
// (slow) route to the paramagnetic coefficient.
Cplx c_kernel_alpha_integral(const EigenSystem& es, double beta, double t,
                             const std::array<long, 2>& x,
                             const std::array<long, 2>& y);

// State expectation of the quadratic observable with matrix m.
double quadratic_expectation(const EigenSystem& es, double beta, const CMat& m);

// Duhamel two-point function (B1, tau_t B2)~ = int_0^beta w(B1* tau_{i a}(tau_t B2)) da
// for quadratic observables; alpha-integral analytic. Real for self-adjoint pairs.
double duhamel_current_inner(const EigenSystem& es, double beta,
                             const CurrentObservable& b1,
                             const CurrentObservable& b2, double t);

// GNS form Re w(B1* tau_t(B2)) for the same observables.
double state_inner(const EigenSystem& es, double beta,
                   const CurrentObservable& b1, const CurrentObservable& b2,
                   double t);

// Sum over inner-box translates of the bond current matrix along `axis`,
// divided by i: the real antisymmetric matrix A with current sum = i A.
Mat summed_bond_matrix(const Box& box, int axis);

// Fluctuation Duhamel form of two summed bond currents:
// (F(I_a), tau_t F(I_b))~ with F the centered, |inner|^(-1/2)-normalized
// translate sum. Centering removes the disconnected part exactly, leaving
// (1/|inner|) sum_{ij} Atil_ij Btil_ij cos(t(E_i - E_j)) K(E_i, E_j).
double fluctuation_inner(const Box& box, const EigenSystem& es, double beta,
                         int axis_a, int axis_b, double t);

// Same quantity assembled the slow way: per-pair alpha-integrated c kernels
// summed over translate pairs. For cross-checks on small boxes.
double fluctuation_inner_direct(const Box& box, const EigenSystem& es,
                                double beta, int axis_a, int axis_b, double t);

// GNS analogue of fluctuation_inner (kernel f_j(1 - f_i) instead of K).
double fluctuation_state_inner(const Box& box, const EigenSystem& es,
                               double beta, int axis_a, int axis_b, double t);

}  // namespace latcond
