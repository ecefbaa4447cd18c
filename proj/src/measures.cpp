#include "latcond/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latcond {

namespace {

void sort_atoms(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.nu < b.nu; });
}

}  // namespace

AtomicMeasure AtomicMeasure::checked(std::vector<Atom> atoms, MeasureKind kind) {
  AtomicMeasure mu;
  for (auto& a : atoms) {
    if (!std::isfinite(a.nu) || !std::isfinite(a.weight))
      throw SolverError("atomic measure: non-finite atom");
    if (a.weight < 0.0) {
      if (a.weight < -tol::weight_clamp)
        throw SolverError("atomic measure: negative weight " +
                          std::to_string(a.weight));
      a.weight = 0.0;
      ++mu.clamped;
    }
  }
  sort_atoms(atoms);
  mu.atoms = std::move(atoms);
  mu.kind = kind;
  return mu;
}

AtomicMeasure AtomicMeasure::raw(std::vector<Atom> atoms, MeasureKind kind) {
  for (const auto& a : atoms)
    if (!std::isfinite(a.nu) || !std::isfinite(a.weight))
      throw SolverError("atomic measure: non-finite atom");
  sort_atoms(atoms);
  AtomicMeasure mu;
  mu.atoms = std::move(atoms);
  mu.kind = kind;
  return mu;
}

std::vector<Atom> bin_atoms(std::vector<Atom> atoms, double width) {
  if (atoms.empty()) return atoms;
  sort_atoms(atoms);
  std::vector<Atom> out;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double first = atoms[i].nu;
    double w = 0.0, wnu = 0.0, nu_sum = 0.0;
    std::size_t j = i;
    for (; j < atoms.size() && atoms[j].nu - first <= width; ++j) {
      w += atoms[j].weight;
      wnu += atoms[j].weight * atoms[j].nu;
      nu_sum += atoms[j].nu;
    }
    const double nu = (w != 0.0) ? wnu / w : nu_sum / double(j - i);
    out.push_back({nu, w});
    i = j;
  }
  return out;
}

double total_mass(const AtomicMeasure& mu) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight;
  return s;
}

double cos_transform(const AtomicMeasure& mu, double t) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight * std::cos(t * a.nu);
  return s;
}

double cos_minus_one_transform(const AtomicMeasure& mu, double t) {
  double s = 0.0;
  for (const auto& a : mu.atoms) {
    if (std::abs(a.nu) < tol::zero_freq) continue;
    s += a.weight * (std::cos(t * a.nu) - 1.0);
  }
  return s;
}

double abs_first_moment(const AtomicMeasure& mu) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight * (1.0 + std::abs(a.nu));
  return s;
}

double weak_star_pair(const AtomicMeasure& mu,
                      const std::function<double(double)>& f) {
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight * f(a.nu);
  return s;
}

double total_mass(const DensityMeasure& rho) {
  if (rho.cell_mass) return rho.cell_mass->sum();
  const long n = rho.grid.size();
  if (n < 2) return 0.0;
  const double h = rho.grid[1] - rho.grid[0];
  double s = 0.5 * (rho.density[0] + rho.density[n - 1]);
  for (long m = 1; m + 1 < n; ++m) s += rho.density[m];
  return h * s;
}

double cos_transform(const DensityMeasure& rho, double t) {
  return weak_star_pair(rho, [t](double nu) { return std::cos(t * nu); });
}

double weak_star_pair(const DensityMeasure& rho,
                      const std::function<double(double)>& f) {
  const long n = rho.grid.size();
  if (rho.cell_mass) {
    double s = 0.0;
    for (long c = 0; c + 1 < n; ++c)
      s += (*rho.cell_mass)[c] * f(0.5 * (rho.grid[c] + rho.grid[c + 1]));
    return s;
  }
  if (n < 2) return 0.0;
  const double h = rho.grid[1] - rho.grid[0];
  double s = 0.0;
  for (long m = 0; m < n; ++m) {
    const double w = (m == 0 || m == n - 1) ? 0.5 * h : h;
    s += w * rho.density[m] * f(rho.grid[m]);
  }
  return s;
}

DensityMeasure mollify(const AtomicMeasure& mu, double bandwidth, const Vec& grid) {
  if (bandwidth <= 0.0) throw ConfigError("mollify: bandwidth must be positive");
  const long n = grid.size();
  if (n < 2) throw ConfigError("mollify: grid needs at least two points");
  const double h = grid[1] - grid[0];
  DensityMeasure rho;
  rho.grid = grid;
  rho.density = Vec::Zero(n);

  const double window = 8.0 * bandwidth;
  for (const auto& a : mu.atoms) {
    const long lo = std::max<long>(0, long(std::floor((a.nu - window - grid[0]) / h)));
    const long hi = std::min<long>(n - 1, long(std::ceil((a.nu + window - grid[0]) / h)));
    if (lo > hi) {
      if (a.weight != 0.0)
        throw ConfigError("mollify: grid does not cover an atom's support");
      continue;
    }
    double norm = 0.0;
    for (long m = lo; m <= hi; ++m) {
      const double z = (grid[m] - a.nu) / bandwidth;
      const double k = std::exp(-0.5 * z * z);
      norm += ((m == 0 || m == n - 1) ? 0.5 * h : h) * k;
    }
    if (norm <= 0.0) {
      if (a.weight != 0.0)
        throw ConfigError("mollify: grid does not cover an atom's support");
      continue;
    }
    const double scale = a.weight / norm;
    for (long m = lo; m <= hi; ++m) {
      const double z = (grid[m] - a.nu) / bandwidth;
      rho.density[m] += scale * std::exp(-0.5 * z * z);
    }
  }
  return rho;
}

Vec mollify_grid(const AtomicMeasure& mu, double bandwidth, long n_points) {
  double lo = 0.0, hi = 0.0;
  if (!mu.atoms.empty()) {
    lo = mu.atoms.front().nu;
    hi = mu.atoms.back().nu;
  }
  lo -= 8.0 * bandwidth;
  hi += 8.0 * bandwidth;
  return Vec::LinSpaced(n_points, lo, hi);
}

double l1_distance(const DensityMeasure& a, const DensityMeasure& b) {
  if (a.grid.size() != b.grid.size() ||
      (a.grid - b.grid).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError("l1_distance: densities live on different grids");
  const long n = a.grid.size();
  const double h = a.grid[1] - a.grid[0];
  double s = 0.0;
  for (long m = 0; m < n; ++m) {
    const double w = (m == 0 || m == n - 1) ? 0.5 * h : h;
    s += w * std::abs(a.density[m] - b.density[m]);
  }
  return s;
}

double drude_sigma(double d0, double relax_time, double t) {
  return d0 * std::exp(-std::abs(t) / relax_time);
}

DensityMeasure drude_measure(double d0, double relax_time, double nu_min,
                             double nu_max, long n_cells) {
  if (!(relax_time > 0.0)) throw ConfigError("drude: relaxation time must be positive");
  if (!(nu_max > nu_min) || n_cells < 1) throw ConfigError("drude: bad grid");
  DensityMeasure rho;
  rho.grid = Vec::LinSpaced(n_cells + 1, nu_min, nu_max);
  rho.density = Vec(n_cells + 1);
  for (long m = 0; m <= n_cells; ++m)
    rho.density[m] =
        d0 / M_PI * relax_time /
        (1.0 + relax_time * relax_time * rho.grid[m] * rho.grid[m]);
  Vec mass(n_cells);
  for (long c = 0; c < n_cells; ++c)
    mass[c] = d0 / M_PI *
              (std::atan(relax_time * rho.grid[c + 1]) -
               std::atan(relax_time * rho.grid[c]));
  rho.cell_mass = std::move(mass);
  return rho;
}

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tolerance, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(a, fa, m, fm, flm);
  const double right = simpson_panel(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tolerance, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tolerance, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tolerance, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson_panel(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tolerance, max_depth);
}

double drude_cos_transform(double d0, double relax_time, double t) {
  const double T = relax_time;
  t = std::abs(t);
  const auto lorentz = [d0, T](double nu) {
    return d0 / M_PI * T / (1.0 + T * T * nu * nu);
  };
  if (t == 0.0) {
    const double cut = 2000.0 / T;
    const double core = adaptive_simpson(lorentz, 0.0, cut, 1e-12);
    const double tail = d0 / 2.0 - d0 / M_PI * std::atan(T * cut);
    return 2.0 * (core + tail);
  }
  const double cut = std::max(2000.0, 2000.0 / t) / T;
  const auto integrand = [&](double nu) { return std::cos(t * nu) * lorentz(nu); };
  const double core = adaptive_simpson(integrand, 0.0, cut, 5e-11);
  // two-term tail: -sin(tX) L(X)/t - cos(tX) L'(X)/t^2, error <= |L'(X)|/t^2
  const double lx = lorentz(cut);
  const double lpx = -d0 / M_PI * 2.0 * T * T * T * cut /
                     std::pow(1.0 + T * T * cut * cut, 2);
  const double tail = -std::sin(t * cut) * lx / t - std::cos(t * cut) * lpx / (t * t);
  return 2.0 * (core + tail);
}

}  // namespace latcond
