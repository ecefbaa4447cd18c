#pragma once

#include "latcond/common.hpp"

namespace latcond {

// Full dense symmetric eigensystem H = Phi * diag(energies) * Phi^T,
// energies ascending, Phi orthogonal with real columns.
struct EigenSystem {
  Vec energies;
  Mat vectors;
  long size() const { return energies.size(); }
};

// Throws SolverError if H has non-finite entries or the solver fails.
EigenSystem diagonalize(const Mat& h);

// F_alpha^beta(kappa) = e^(alpha*kappa) / (1 + e^(beta*kappa)),
// 0 <= alpha <= beta. Evaluated in factored form: no intermediate overflow
// for any argument magnitude.
double fermi_weight(double alpha, double beta, double kappa);

// (1 + e^(beta*H))^(-1) assembled from the eigensystem.
Mat fermi_symbol(const EigenSystem& es, double beta);

// e^(-i*t*H)
CMat propagator(const EigenSystem& es, double t);

// W(dE) = (e^(beta*dE) - 1)/dE, the analytic integral of e^(alpha*dE) over
// alpha in [0, beta]. Switches to the series beta*(1 + z/2 + z^2/6),
// z = beta*dE, when |z| < tol::alpha_weight_series.
double duhamel_alpha_weight(double d_e, double beta);

// K(a,b) = (f(b) - f(a))/(a - b) with f the Fermi function at inverse
// temperature beta; K(a,a) = beta*f(a)*(1-f(a)). Symmetric, positive, equals
// the alpha-integral of F_alpha^beta(a) * F_{beta-alpha}^beta(b). Evaluated
// through sinh/cosh factors (log-domain for large arguments) so it stays
// accurate from the degenerate limit up to beta ~ 50 on spectra of order 10.
double kubo_mori_kernel(double a, double b, double beta);

}  // namespace latcond
