#pragma once

#include <vector>

#include "latcond/correlators.hpp"
#include "latcond/lattice.hpp"
#include "latcond/measures.hpp"
#include "latcond/spectral.hpp"

namespace latcond {

// Bohr-frequency pair data for one realization and one bond direction:
// for eigenpairs i < j with coupling, nu = E_j - E_i >= 0 and
// w = A~_ij^2 K_ij / |inner box|, where A~ is the summed bond matrix in the
// eigenbasis and K the Kubo-Mori kernel. Pairs below the zero-frequency
// cutoff are pooled into zero_mass.
struct TransportPairs {
  std::vector<double> nu;
  std::vector<double> w;
  double zero_mass = 0.0;
};

TransportPairs transport_pairs(const Box& box, const EigenSystem& es,
                               double beta, int axis);

// (1/|inner|) x volume-summed current-current Duhamel difference
//   Xi(t) = (J, tau_t J) - (J, J) = sum_pairs 2 w (cos(t nu) - 1)  <= 0
double xi_from_pairs(const TransportPairs& pairs, double t);
Vec xi_paramagnetic(const Box& box, const EigenSystem& es, double beta,
                    int axis, const Vec& times);
// Same quantity assembled from per-site c-kernel alpha integrals; O(n^2)
// per site pair, used to cross-check the spectral route.
double xi_paramagnetic_direct(const Box& box, const EigenSystem& es,
                              double beta, int axis, double t);

// Paramagnetic measure: symmetric atoms at +-nu with weight w, centroid-
// binned, plus the pooled zero-frequency atom. Xi(t) = int (cos - 1) dmu.
AtomicMeasure paramagnetic_measure(const Box& box, const EigenSystem& es,
                                   double beta, int axis);

// Diamagnetic coefficient: (2/|inner|) sum_x <e_{x+e_k}, f(H) e_x>.
double sigma_d(const Box& box, const EigenSystem& es, double beta, int axis);

// sigma_p(t) = int (cos(t nu) - 1) dmu_p
double sigma_from_measure(const AtomicMeasure& mu_p, double t);

// mu_p + (sigma_d - mu_p(R)) delta_0; the zero atom may be signed.
AtomicMeasure full_measure(const AtomicMeasure& mu_p, double sigma_d_value);
// Full measure with the zero-frequency atom removed.
AtomicMeasure ac_measure(const AtomicMeasure& mu_full);

// Step-response coefficient: 0 for t < 0, sigma_d + sigma_p(t) for t >= 0.
double big_sigma(double t, double sigma_d_value, const AtomicMeasure& mu_p);

// Duhamel vs state autocorrelation of the summed current at t = 0.
// ratio = (J,J)_Duhamel / (beta (J,J)_state) <= 1.
struct AutoCorrelation {
  double duhamel = 0.0;
  double state_scaled = 0.0;  // beta * state inner product
  double ratio = 0.0;
};
AutoCorrelation auto_correlation(const Box& box, const EigenSystem& es,
                                 double beta, int axis);

}  // namespace latcond
