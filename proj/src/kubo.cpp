#include "latcond/kubo.hpp"

#include <cmath>

namespace latcond {

TransportPairs transport_pairs(const Box& box, const EigenSystem& es,
                               double beta, int axis) {
  const Mat a = summed_bond_matrix(box, axis);
  const Mat at = es.vectors.transpose() * a * es.vectors;
  const long n = es.energies.size();
  const double inv_inner = 1.0 / double(box.n_inner());
  TransportPairs pairs;
  pairs.nu.reserve(std::size_t(n) * (n - 1) / 2);
  pairs.w.reserve(std::size_t(n) * (n - 1) / 2);
  for (long i = 0; i < n; ++i) {
    // diagonal entries of an antisymmetric form vanish up to rounding;
    // whatever dust remains sits at frequency zero
    const double dii = at(i, i);
    pairs.zero_mass +=
        dii * dii * kubo_mori_kernel(es.energies[i], es.energies[i], beta) * inv_inner;
    for (long j = i + 1; j < n; ++j) {
      const double aij = at(i, j);
      if (aij == 0.0) continue;
      const double w = aij * aij *
                       kubo_mori_kernel(es.energies[i], es.energies[j], beta) *
                       inv_inner;
      if (w == 0.0) continue;
      const double nu = es.energies[j] - es.energies[i];
      if (nu < tol::zero_freq) {
        pairs.zero_mass += 2.0 * w;
      } else {
        pairs.nu.push_back(nu);
        pairs.w.push_back(w);
      }
    }
  }
  return pairs;
}

double xi_from_pairs(const TransportPairs& pairs, double t) {
  double s = 0.0, c = 0.0;  // Kahan: many small terms of one sign
  for (std::size_t k = 0; k < pairs.nu.size(); ++k) {
    const double term = 2.0 * pairs.w[k] * (std::cos(t * pairs.nu[k]) - 1.0);
    const double y = term - c;
    const double u = s + y;
    c = (u - s) - y;
    s = u;
  }
  return s;
}

Vec xi_paramagnetic(const Box& box, const EigenSystem& es, double beta,
                    int axis, const Vec& times) {
  const TransportPairs pairs = transport_pairs(box, es, beta, axis);
  Vec out(times.size());
  for (long k = 0; k < times.size(); ++k) out[k] = xi_from_pairs(pairs, times[k]);
  return out;
}

double xi_paramagnetic_direct(const Box& box, const EigenSystem& es,
                              double beta, int axis, double t) {
  const long n = box.n_sites();
  Cplx acc(0.0, 0.0);
  for (long x = 0; x < n; ++x) {
    if (!box.in_inner(box.coords(x))) continue;
    const long xm = box.neighbor(x, axis, -1);
    if (xm < 0)
      throw ConfigError("inner box touches an open boundary; pad the box");
    const std::array<long, 2> sx{xm, x};
    for (long y = 0; y < n; ++y) {
      if (!box.in_inner(box.coords(y))) continue;
      const long ym = box.neighbor(y, axis, -1);
      const std::array<long, 2> sy{ym, y};
      acc += c_kernel_alpha_integral(es, beta, t, sx, sy) -
             c_kernel_alpha_integral(es, beta, 0.0, sx, sy);
    }
  }
  return acc.real() / double(box.n_inner());
}

AtomicMeasure paramagnetic_measure(const Box& box, const EigenSystem& es,
                                   double beta, int axis) {
  const TransportPairs pairs = transport_pairs(box, es, beta, axis);
  std::vector<Atom> positive(pairs.nu.size());
  for (std::size_t k = 0; k < pairs.nu.size(); ++k)
    positive[k] = {pairs.nu[k], pairs.w[k]};
  positive = bin_atoms(std::move(positive));
  std::vector<Atom> atoms;
  atoms.reserve(2 * positive.size() + 1);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it)
    atoms.push_back({-it->nu, it->weight});
  atoms.push_back({0.0, pairs.zero_mass});
  for (const auto& a : positive) atoms.push_back(a);
  return AtomicMeasure::checked(std::move(atoms), MeasureKind::paramagnetic);
}

double sigma_d(const Box& box, const EigenSystem& es, double beta, int axis) {
  const long n = box.n_sites();
  Vec overlap = Vec::Zero(n);  // overlap[i] = sum_x phi_i(x+e) phi_i(x)
  for (long x = 0; x < n; ++x) {
    if (!box.in_inner(box.coords(x))) continue;
    const long xp = box.neighbor(x, axis, +1);
    if (xp < 0)
      throw ConfigError("inner box touches an open boundary; pad the box");
    overlap += es.vectors.row(xp).cwiseProduct(es.vectors.row(x)).transpose();
  }
  double s = 0.0;
  for (long i = 0; i < n; ++i)
    s += fermi_weight(0.0, beta, es.energies[i]) * overlap[i];
  return 2.0 * s / double(box.n_inner());
}

double sigma_from_measure(const AtomicMeasure& mu_p, double t) {
  return cos_minus_one_transform(mu_p, t);
}

AtomicMeasure full_measure(const AtomicMeasure& mu_p, double sigma_d_value) {
  const double defect = sigma_d_value - total_mass(mu_p);
  std::vector<Atom> atoms = mu_p.atoms;
  bool placed = false;
  for (auto& a : atoms) {
    if (std::abs(a.nu) < tol::zero_freq) {
      a.weight += defect;
      placed = true;
      break;
    }
  }
  if (!placed) atoms.push_back({0.0, defect});
  return AtomicMeasure::raw(std::move(atoms), MeasureKind::full);
}

AtomicMeasure ac_measure(const AtomicMeasure& mu_full) {
  std::vector<Atom> atoms;
  atoms.reserve(mu_full.atoms.size());
  for (const auto& a : mu_full.atoms)
    if (std::abs(a.nu) >= tol::zero_freq) atoms.push_back(a);
  return AtomicMeasure::checked(std::move(atoms), MeasureKind::ac);
}

double big_sigma(double t, double sigma_d_value, const AtomicMeasure& mu_p) {
  if (t < 0.0) return 0.0;
  return sigma_d_value + cos_minus_one_transform(mu_p, t);
}

AutoCorrelation auto_correlation(const Box& box, const EigenSystem& es,
                                 double beta, int axis) {
  AutoCorrelation r;
  r.duhamel = fluctuation_inner(box, es, beta, axis, axis, 0.0);
  r.state_scaled = beta * fluctuation_state_inner(box, es, beta, axis, axis, 0.0);
  r.ratio = (r.state_scaled != 0.0) ? r.duhamel / r.state_scaled : 1.0;
  return r;
}

}  // namespace latcond
