#pragma once

#include "latcond/common.hpp"
#include "latcond/measures.hpp"

namespace latcond {

// Compactly supported potential pulse: a truncated Gaussian profile in the
// slow time s / time_scale. The driving field is minus its time derivative,
// so the field integrates to zero and its first moment equals the integral
// of the potential.
struct Pulse {
  double amp = 1.0;
  double center = 4.0;
  double width = 0.5;
  double trunc_radius = 6.0;
  double time_scale = 1.0;

  // g(s/T): truncated Gaussian, zero for |s/T - center| > trunc_radius
  double potential(double s) const;
  // e(s) = -(1/T) g'(s/T)
  double field(double s) const;
  Pulse rescaled(double factor) const;
  double support_lo() const { return time_scale * (center - trunc_radius); }
  double support_hi() const { return time_scale * (center + trunc_radius); }
  void validate() const;
};

struct PulseMoments {
  double integral_g = 0.0;      // int g_T(s) ds
  double integral_e = 0.0;      // int e(s) ds  (zero up to quadrature)
  double first_moment_e = 0.0;  // int s e(s) ds (= integral_g exactly)
};
PulseMoments pulse_moments(const Pulse& pulse, long n_grid = 4097);

struct HeatResult {
  double q_time = 0.0;          // double time integral against sigma_d + sigma_p
  double q_freq = 0.0;          // |e^(nu)|^2 paired with the full measure
  double q_dia = 0.0;           // (1/2) sigma_d |h|^2 (int e)^2
  double field_integral = 0.0;  // quadrature int e ds
};

// Second-order heat production of the driven system, from the paramagnetic
// measure and diamagnetic coefficient of one realization. The time route
// uses a uniform trapezoid grid of n_time points on the pulse support (so
// sigma_p is only needed at the 2 n_time - 1 grid offsets); the frequency
// route re-samples the field on a different grid of n_freq points and pairs
// the squared Fourier amplitude with the full measure. h_norm_sq is the
// squared norm of the spatial field profile.
HeatResult heat_production(const AtomicMeasure& mu_p, double sigma_d_value,
                           const Pulse& pulse, long n_time = 513,
                           long n_freq = 769, double h_norm_sq = 1.0);

// Same, for a field already sampled on a uniform grid.
HeatResult heat_production_sampled(const AtomicMeasure& mu_p,
                                   double sigma_d_value, const Vec& s_grid,
                                   const Vec& e_values, long n_freq = 769,
                                   double h_norm_sq = 1.0);

}  // namespace latcond
