#include "latcond/fields.hpp"

#include <cmath>

#include "latcond/kubo.hpp"

namespace latcond {

void Pulse::validate() const {
  if (!(width > 0.0)) throw ConfigError("pulse: width must be positive");
  if (!(trunc_radius > 0.0)) throw ConfigError("pulse: trunc_radius must be positive");
  if (!(time_scale > 0.0)) throw ConfigError("pulse: time_scale must be positive");
}

double Pulse::potential(double s) const {
  const double u = s / time_scale - center;
  if (std::abs(u) > trunc_radius) return 0.0;
  return amp * std::exp(-u * u / (2.0 * width * width));
}

double Pulse::field(double s) const {
  const double u = s / time_scale - center;
  if (std::abs(u) > trunc_radius) return 0.0;
  return amp * u / (width * width * time_scale) *
         std::exp(-u * u / (2.0 * width * width));
}

Pulse Pulse::rescaled(double factor) const {
  Pulse p = *this;
  p.time_scale *= factor;
  return p;
}

PulseMoments pulse_moments(const Pulse& pulse, long n_grid) {
  pulse.validate();
  if (n_grid < 3) throw ConfigError("pulse_moments: grid too small");
  const double lo = pulse.support_lo(), hi = pulse.support_hi();
  const double h = (hi - lo) / double(n_grid - 1);
  PulseMoments m;
  for (long k = 0; k < n_grid; ++k) {
    const double s = lo + k * h;
    const double w = (k == 0 || k == n_grid - 1) ? 0.5 * h : h;
    m.integral_g += w * pulse.potential(s);
    const double e = pulse.field(s);
    m.integral_e += w * e;
    m.first_moment_e += w * s * e;
  }
  return m;
}

HeatResult heat_production_sampled(const AtomicMeasure& mu_p,
                                   double sigma_d_value, const Vec& s_grid,
                                   const Vec& e_values, long n_freq,
                                   double h_norm_sq) {
  const long n = s_grid.size();
  if (n < 3 || e_values.size() != n)
    throw ConfigError("heat: need a sampled field on at least three nodes");
  const double h = s_grid[1] - s_grid[0];
  for (long k = 1; k + 1 < n; ++k)
    if (std::abs((s_grid[k + 1] - s_grid[k]) - h) > 1e-9 * std::abs(h))
      throw ConfigError("heat: time grid must be uniform");

  Vec wf(n);  // trapezoid-weighted field
  for (long k = 0; k < n; ++k)
    wf[k] = ((k == 0 || k == n - 1) ? 0.5 * h : h) * e_values[k];

  HeatResult r;
  r.field_integral = wf.sum();
  r.q_dia = 0.5 * sigma_d_value * h_norm_sq * r.field_integral * r.field_integral;

  // sigma_p at the grid offsets; it is even in the time difference
  Vec offs(n);
  for (long j = 0; j < n; ++j) offs[j] = sigma_from_measure(mu_p, double(j) * h);
  double para = 0.0, c = 0.0;
  for (long m = 0; m < n; ++m) {
    for (long k = 0; k < n; ++k) {
      const double term = wf[m] * wf[k] * offs[std::abs(m - k)];
      const double y = term - c;
      const double u = para + y;
      c = (u - para) - y;
      para = u;
    }
  }
  r.q_time = r.q_dia + 0.5 * h_norm_sq * para;

  // independent grid for the frequency route
  const AtomicMeasure mu_full = full_measure(mu_p, sigma_d_value);
  const double lo = s_grid[0], hi = s_grid[n - 1];
  const long nf = n_freq;
  const double hf = (hi - lo) / double(nf - 1);
  // resample by exact evaluation is impossible here; interpolate linearly
  Vec ef(nf);
  for (long k = 0; k < nf; ++k) {
    const double s = lo + k * hf;
    const double pos = (s - lo) / h;
    long idx = long(std::floor(pos));
    if (idx < 0) idx = 0;
    if (idx > n - 2) idx = n - 2;
    const double frac = pos - double(idx);
    ef[k] = (1.0 - frac) * e_values[idx] + frac * e_values[idx + 1];
  }
  double qf = 0.0;
  for (const auto& atom : mu_full.atoms) {
    Cplx amp(0.0, 0.0);
    for (long k = 0; k < nf; ++k) {
      const double w = (k == 0 || k == nf - 1) ? 0.5 * hf : hf;
      const double s = lo + k * hf;
      amp += w * ef[k] * std::exp(Cplx(0.0, atom.nu * s));
    }
    qf += atom.weight * std::norm(amp);
  }
  r.q_freq = 0.5 * h_norm_sq * qf;
  return r;
}

HeatResult heat_production(const AtomicMeasure& mu_p, double sigma_d_value,
                           const Pulse& pulse, long n_time, long n_freq,
                           double h_norm_sq) {
  pulse.validate();
  if (n_time < 3 || n_freq < 3) throw ConfigError("heat: grids too small");
  const double lo = pulse.support_lo(), hi = pulse.support_hi();

  Vec s_grid = Vec::LinSpaced(n_time, lo, hi);
  Vec e_values(n_time);
  for (long k = 0; k < n_time; ++k) e_values[k] = pulse.field(s_grid[k]);

  // time route on the n_time grid
  HeatResult r = heat_production_sampled(mu_p, sigma_d_value, s_grid, e_values,
                                         /*n_freq=*/3, h_norm_sq);

  // frequency route on its own grid, sampling the exact field
  const AtomicMeasure mu_full = full_measure(mu_p, sigma_d_value);
  const double hf = (hi - lo) / double(n_freq - 1);
  double qf = 0.0;
  for (const auto& atom : mu_full.atoms) {
    Cplx amp(0.0, 0.0);
    for (long k = 0; k < n_freq; ++k) {
      const double s = lo + k * hf;
      const double w = (k == 0 || k == n_freq - 1) ? 0.5 * hf : hf;
      amp += w * pulse.field(s) * std::exp(Cplx(0.0, atom.nu * s));
    }
    qf += atom.weight * std::norm(amp);
  }
  r.q_freq = 0.5 * h_norm_sq * qf;
  return r;
}

}  // namespace latcond
