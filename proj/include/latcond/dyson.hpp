#pragma once

#include <utility>
#include <vector>

#include "latcond/common.hpp"
#include "latcond/lattice.hpp"

namespace latcond {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(long n, Vec& nodes, Vec& weights);

struct DysonResult {
  CVec psi;       // e^{-i tau lambda V} sum_{n < orders} I_n(tau)
  CVec exact;     // e^{-i tau H} psi0 from exact diagonalization
  double error;   // || psi - exact ||_2
  double bound;   // (4 d |tau|)^orders / orders!
};

// Propagate psi0 by exp(-i tau H), H = lap + lambda diag(v), through the
// interaction-picture hopping expansion
//   I_0 = psi0,  I_n(s) = -i int_0^s W(u) I_{n-1}(u) du,
//   W(u) = e^{i u lambda V} lap e^{-i u lambda V},
// truncated after `orders` terms. Each level is represented on `nodes`
// Gauss-Legendre collocation points and integrated with a spectral
// cumulative-integration matrix, so a level costs one dense matrix product.
// For lambda = 0 the expansion reduces exactly to the Taylor polynomial of
// e^{-i tau lap}.
DysonResult dyson_propagate(const Mat& lap, const Vec& v, double lambda,
                            double tau, int orders, int dim, const CVec& psi0,
                            long nodes = 32);

// E[e^{i s V_x}] for a single site of the given disorder law.
double characteristic_function(Disorder kind, double s);

// E[ prod_j e^{i s_j V_{x_j}} ]: factorizes over distinct sites, phases on
// repeated sites accumulate. Real because the laws are symmetric.
double phase_product_expectation(
    Disorder kind, const std::vector<std::pair<long, double>>& site_phases);

}  // namespace latcond
