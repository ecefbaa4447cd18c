#include "latcond/continuum.hpp"

#include <cmath>
#include <functional>

#include "latcond/spectral.hpp"

namespace latcond {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw ConfigError("momentum integrals: dim must be 1..3");
}

// Midpoint product rule over the Brillouin zone [-pi,pi]^d. The weight
// (2pi/m)^d is left to the caller via the returned plain average * (2pi)^d.
double bz_average(int dim, long m,
                  const std::function<double(const std::array<double, 3>&)>& f) {
  std::array<long, 3> idx{0, 0, 0};
  std::array<double, 3> p{0.0, 0.0, 0.0};
  const double h = 2.0 * M_PI / double(m);
  double s = 0.0, c = 0.0;
  const long total = [&] {
    long t = 1;
    for (int k = 0; k < dim; ++k) t *= m;
    return t;
  }();
  for (long flat = 0; flat < total; ++flat) {
    long r = flat;
    for (int k = dim - 1; k >= 0; --k) {
      idx[k] = r % m;
      r /= m;
    }
    for (int k = 0; k < dim; ++k) p[k] = -M_PI + (double(idx[k]) + 0.5) * h;
    const double y = f(p) - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  return s / double(total);
}

}  // namespace

double band_energy(const std::array<double, 3>& p, int dim) {
  double e = 0.0;
  for (int k = 0; k < dim; ++k) e += 2.0 * (1.0 - std::cos(p[k]));
  return e;
}

double sigma_d_free(int dim, double beta, long m_grid) {
  check_dim(dim);
  const double avg = bz_average(dim, m_grid, [&](const std::array<double, 3>& p) {
    return std::cos(p[0]) * fermi_weight(0.0, beta, band_energy(p, dim));
  });
  return 2.0 * avg;  // (2/(2pi)^d) * (2pi)^d * average
}

double fermi_symbol_free(int dim, double beta, const std::array<long, 3>& dx,
                         long m_grid) {
  check_dim(dim);
  return bz_average(dim, m_grid, [&](const std::array<double, 3>& p) {
    double phase = 0.0;
    for (int k = 0; k < dim; ++k) phase += p[k] * double(dx[k]);
    return std::cos(phase) * fermi_weight(0.0, beta, band_energy(p, dim));
  });
}

double window_kernel(int half_side, int dim, const std::array<double, 3>& u) {
  check_dim(dim);
  const double side = 2.0 * half_side + 1.0;
  double prod = 1.0;
  for (int k = 0; k < dim; ++k) {
    const double s = std::sin(0.5 * u[k]);
    double dir;
    if (std::abs(s) < 1e-9) {
      dir = side;  // removable singularity at u_k = 0 mod 2pi
    } else {
      dir = std::sin(0.5 * side * u[k]) / s;
    }
    prod *= dir * dir / side;
  }
  return prod;
}

double window_kernel_integral(int half_side, int dim, long m_grid) {
  check_dim(dim);
  const double avg = bz_average(dim, m_grid, [&](const std::array<double, 3>& u) {
    return window_kernel(half_side, dim, u);
  });
  return avg * std::pow(2.0 * M_PI, dim);
}

double xi_momentum_density(int dim, double beta, double t,
                           const std::array<double, 3>& u, long m_grid) {
  check_dim(dim);
  const double avg = bz_average(dim, m_grid, [&](const std::array<double, 3>& k) {
    std::array<double, 3> kpu{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) kpu[a] = k[a] + u[a];
    const double ea = band_energy(k, dim);
    const double eb = band_energy(kpu, dim);
    return (1.0 - std::cos(2.0 * k[0] + u[0])) * std::cos(t * (ea - eb)) *
           kubo_mori_kernel(ea, eb, beta);
  });
  // (2/(2pi)^{2d}) * (2pi)^d * average = 2 * average / (2pi)^d
  return 2.0 * avg / std::pow(2.0 * M_PI, dim);
}

double free_xi_bz(int dim, int half_side, double beta, double t, long m_outer,
                  long m_inner) {
  check_dim(dim);
  const double avg = bz_average(dim, m_outer, [&](const std::array<double, 3>& u) {
    const double dt = xi_momentum_density(dim, beta, t, u, m_inner);
    const double d0 = xi_momentum_density(dim, beta, 0.0, u, m_inner);
    return window_kernel(half_side, dim, u) * (dt - d0);
  });
  return avg * std::pow(2.0 * M_PI, dim);
}

}  // namespace latcond
