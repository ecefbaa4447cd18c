#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "latcond/common.hpp"

namespace latcond {

enum class MeasureKind { paramagnetic, full, ac, other };

struct Atom {
  double nu = 0.0;
  double weight = 0.0;
};

// Finite atomic measure, atoms sorted by frequency.
struct AtomicMeasure {
  std::vector<Atom> atoms;
  MeasureKind kind = MeasureKind::other;
  long clamped = 0;  // audit: tiny negative weights zeroed by checked()

  // Nonnegative-weight policy: weights in [-tol::weight_clamp, 0) are
  // clamped to zero and counted, anything more negative throws.
  static AtomicMeasure checked(std::vector<Atom> atoms, MeasureKind kind);
  // Signed weights allowed (used for the full measure, whose zero-frequency
  // atom may legitimately be negative).
  static AtomicMeasure raw(std::vector<Atom> atoms, MeasureKind kind);
};

// Merge atoms closer than `width` into single atoms at the mass-weighted
// centroid. Input need not be sorted.
std::vector<Atom> bin_atoms(std::vector<Atom> atoms, double width = tol::atom_bin);

double total_mass(const AtomicMeasure& mu);
// int cos(t nu) dmu
double cos_transform(const AtomicMeasure& mu, double t);
// int (cos(t nu) - 1) dmu, with zero-frequency atoms contributing exactly 0
double cos_minus_one_transform(const AtomicMeasure& mu, double t);
// int (1 + |nu|) dmu
double abs_first_moment(const AtomicMeasure& mu);
// sum w f(nu)
double weak_star_pair(const AtomicMeasure& mu, const std::function<double(double)>& f);

// Density on a uniform grid. If cell_mass is present (size grid-1) it is the
// exact mass of each cell and takes precedence over trapezoid sums.
struct DensityMeasure {
  Vec grid;
  Vec density;
  std::optional<Vec> cell_mass;
};

double total_mass(const DensityMeasure& rho);
double cos_transform(const DensityMeasure& rho, double t);
double weak_star_pair(const DensityMeasure& rho, const std::function<double(double)>& f);

// Gaussian mollification of an atomic measure onto `grid`. Each atom's
// discrete kernel is normalized under the grid's trapezoid weights, so total
// mass is preserved to rounding. Throws if the grid fails to cover an atom.
DensityMeasure mollify(const AtomicMeasure& mu, double bandwidth, const Vec& grid);

// Uniform grid covering the measure's support with margin 8*bandwidth.
Vec mollify_grid(const AtomicMeasure& mu, double bandwidth, long n_points = 2048);

// Trapezoid L1 distance of two densities on the same grid.
double l1_distance(const DensityMeasure& a, const DensityMeasure& b);

// In-phase Drude conductivity D e^{-|t|/T}.
double drude_sigma(double d0, double relax_time, double t);

// Lorentzian measure (D/pi) T/(1 + T^2 nu^2) dnu on [nu_min, nu_max] with
// exact per-cell masses from the arctan primitive.
DensityMeasure drude_measure(double d0, double relax_time, double nu_min,
                             double nu_max, long n_cells);

// int cos(t nu) dmu_T over the whole line by adaptive quadrature on an
// oscillation-resolving core plus a two-term integration-by-parts tail
// (exact arctan tail at t = 0). Accurate to ~1e-8 for t = 0 or t >= 0.01.
double drude_cos_transform(double d0, double relax_time, double t);

// Recursive adaptive Simpson quadrature.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tolerance, int max_depth = 40);

}  // namespace latcond
