#include "latcond/correlators.hpp"

#include <cmath>

namespace latcond {

namespace {
const Cplx kHalfOverI(0.0, -0.5);  // 1/(2i)
}

CMat current_matrix(const CurrentObservable& cur) {
  return kHalfOverI * (cur.psi1 * cur.psi2.adjoint() -
                       cur.psi2 * cur.psi1.adjoint());
}

CurrentObservable bond_current(const Box& box, long x_index, int axis) {
  const long partner = box.neighbor(x_index, axis, -1);
  if (partner < 0)
    throw ConfigError("bond partner leaves the box; enlarge or pad it");
  const long n = box.n_sites();
  CurrentObservable cur{CVec::Zero(n), CVec::Zero(n)};
  cur.psi1[partner] = -2.0;  // I = -2 Im(a*_{x-e} a_x)
  cur.psi2[x_index] = 1.0;
  return cur;
}

CurrentObservable evolve_current(const EigenSystem& es, double s,
                                 const CurrentObservable& cur) {
  const long n = es.size();
  CVec phase(n);
  for (long i = 0; i < n; ++i) phase[i] = std::exp(Cplx(0.0, s * es.energies[i]));
  const Mat& phi = es.vectors;
  auto push = [&](const CVec& v) -> CVec {
    CVec w = phi.transpose().cast<Cplx>() * v;
    w.array() *= phase.array();
    return phi.cast<Cplx>() * w;
  };
  return CurrentObservable{push(cur.psi1), push(cur.psi2)};
}

Cplx complex_time_correlator(const EigenSystem& es, double beta, double t,
                             double alpha, long x1, long x2) {
  const long n = es.size();
  Cplx acc(0.0, 0.0);
  for (long i = 0; i < n; ++i) {
    const double e = es.energies[i];
    const double amp = es.vectors(x2, i) * es.vectors(x1, i) *
                       fermi_weight(alpha, beta, e);
    acc += amp * std::exp(Cplx(0.0, -t * e));
  }
  return acc;
}

Cplx c_kernel(const EigenSystem& es, double beta, double t, double alpha,
              const std::array<long, 2>& x, const std::array<long, 2>& y) {
  Cplx acc(0.0, 0.0);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const double sign = (p == q) ? 1.0 : -1.0;
      const Cplx left =
          complex_time_correlator(es, beta, t, alpha, y[q], x[p]);
      const Cplx right = complex_time_correlator(es, beta, -t, beta - alpha,
                                                 x[1 - p], y[1 - q]);
      acc += sign * left * right;
    }
  }
  return acc;
}

Cplx c_kernel_alpha_integral(const EigenSystem& es, double beta, double t,
                             const std::array<long, 2>& x,
                             const std::array<long, 2>& y) {
  // The permutation sum factorizes into antisymmetrized eigenvector products
  // D^x_ij D^y_ij, and the alpha integral of the two Fermi weights is the
  // Kubo-Mori kernel.
  const long n = es.size();
  const Mat& phi = es.vectors;
  Cplx acc(0.0, 0.0);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double dx = phi(x[0], i) * phi(x[1], j) - phi(x[1], i) * phi(x[0], j);
      if (dx == 0.0) continue;
      const double dy = phi(y[0], i) * phi(y[1], j) - phi(y[1], i) * phi(y[0], j);
      const double w = kubo_mori_kernel(es.energies[i], es.energies[j], beta);
      acc += dx * dy * w * std::exp(Cplx(0.0, -t * (es.energies[i] - es.energies[j])));
    }
  }
  return acc;
}

double quadratic_expectation(const EigenSystem& es, double beta, const CMat& m) {
  const long n = es.size();
  const CMat b = m * es.vectors.cast<Cplx>();
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    const Cplx diag = es.vectors.col(i).cast<Cplx>().dot(b.col(i));
    acc += fermi_weight(0.0, beta, es.energies[i]) * diag.real();
  }
  return acc;
}

namespace {

// Rank-2 representation of a current in the eigenbasis.
struct EigenCurrent {
  CVec u1, u2;  // Phi^T psi1, Phi^T psi2
  Cplx entry(long i, long j) const {
    return kHalfOverI *
           (u1[i] * std::conj(u2[j]) - u2[i] * std::conj(u1[j]));
  }
};

EigenCurrent to_eigenbasis(const EigenSystem& es, const CurrentObservable& cur) {
  return EigenCurrent{es.vectors.transpose().cast<Cplx>() * cur.psi1,
                      es.vectors.transpose().cast<Cplx>() * cur.psi2};
}

double current_expectation(const EigenSystem& es, double beta,
                           const EigenCurrent& c) {
  double acc = 0.0;
  for (long i = 0; i < es.size(); ++i)
    acc += fermi_weight(0.0, beta, es.energies[i]) * c.entry(i, i).real();
  return acc;
}

// Shared pair loop for both two-point forms. kernel(i, j) supplies K or the
// GNS factor f_j (1 - f_i).
template <typename Kernel>
Cplx pair_form(const EigenSystem& es, const EigenCurrent& a,
               const EigenCurrent& b, double t, Kernel kernel) {
  const long n = es.size();
  Cplx acc(0.0, 0.0);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const Cplx prod = std::conj(a.entry(i, j)) * b.entry(i, j);
      if (prod == Cplx(0.0, 0.0)) continue;
      const double de = es.energies[i] - es.energies[j];
      acc += prod * kernel(i, j) * std::exp(Cplx(0.0, t * de));
    }
  }
  return acc;
}

}  // namespace

double duhamel_current_inner(const EigenSystem& es, double beta,
                             const CurrentObservable& b1,
                             const CurrentObservable& b2, double t) {
  const EigenCurrent a = to_eigenbasis(es, b1);
  const EigenCurrent b = to_eigenbasis(es, b2);
  const Cplx conn = pair_form(es, a, b, t, [&](long i, long j) {
    return kubo_mori_kernel(es.energies[i], es.energies[j], beta);
  });
  const double disc =
      beta * current_expectation(es, beta, a) * current_expectation(es, beta, b);
  return conn.real() + disc;
}

double state_inner(const EigenSystem& es, double beta,
                   const CurrentObservable& b1, const CurrentObservable& b2,
                   double t) {
  const EigenCurrent a = to_eigenbasis(es, b1);
  const EigenCurrent b = to_eigenbasis(es, b2);
  const Cplx conn = pair_form(es, a, b, t, [&](long i, long j) {
    return fermi_weight(0.0, beta, es.energies[j]) *
           fermi_weight(0.0, beta, -es.energies[i]);
  });
  const double disc =
      current_expectation(es, beta, a) * current_expectation(es, beta, b);
  return conn.real() + disc;
}

Mat summed_bond_matrix(const Box& box, int axis) {
  if (axis < 0 || axis >= box.dim) throw ConfigError("axis out of range");
  const long n = box.n_sites();
  Mat a = Mat::Zero(n, n);
  for (long idx = 0; idx < n; ++idx) {
    if (!box.in_inner(box.coords(idx))) continue;
    const long partner = box.neighbor(idx, axis, -1);
    if (partner < 0)
      throw ConfigError("inner box touches an open boundary; pad the box");
    // translate of the bond current (x, x - e): matrix i(A), with
    // A = e_{x-e} e_x^T - e_x e_{x-e}^T
    a(partner, idx) += 1.0;
    a(idx, partner) -= 1.0;
  }
  return a;
}

namespace {

// The summed bond matrices are i * (real antisymmetric), so the pair product
// is real and the sin part cancels in the ij sum; only cos survives.
template <typename Kernel>
double fluct_form(const Box& box, const EigenSystem& es, int axis_a,
                  int axis_b, double t, Kernel kernel) {
  const Mat at = es.vectors.transpose() * summed_bond_matrix(box, axis_a) *
                 es.vectors;
  const Mat bt = (axis_a == axis_b)
                     ? at
                     : Mat(es.vectors.transpose() *
                           summed_bond_matrix(box, axis_b) * es.vectors);
  const long n = es.size();
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double prod = at(i, j) * bt(i, j);
      if (prod == 0.0) continue;
      const double de = es.energies[i] - es.energies[j];
      acc += prod * kernel(i, j) * std::cos(t * de);
    }
  }
  return acc / static_cast<double>(box.n_inner());
}

}  // namespace

double fluctuation_inner(const Box& box, const EigenSystem& es, double beta,
                         int axis_a, int axis_b, double t) {
  return fluct_form(box, es, axis_a, axis_b, t, [&](long i, long j) {
    return kubo_mori_kernel(es.energies[i], es.energies[j], beta);
  });
}

double fluctuation_state_inner(const Box& box, const EigenSystem& es,
                               double beta, int axis_a, int axis_b, double t) {
  return fluct_form(box, es, axis_a, axis_b, t, [&](long i, long j) {
    return fermi_weight(0.0, beta, es.energies[j]) *
           fermi_weight(0.0, beta, -es.energies[i]);
  });
}

double fluctuation_inner_direct(const Box& box, const EigenSystem& es,
                                double beta, int axis_a, int axis_b, double t) {
  const long n = box.n_sites();
  double acc = 0.0;
  for (long x = 0; x < n; ++x) {
    if (!box.in_inner(box.coords(x))) continue;
    const long xp = box.neighbor(x, axis_a, -1);
    for (long y = 0; y < n; ++y) {
      if (!box.in_inner(box.coords(y))) continue;
      const long yp = box.neighbor(y, axis_b, -1);
      acc += c_kernel_alpha_integral(es, beta, t, {x, xp}, {y, yp}).real();
    }
  }
  return acc / static_cast<double>(box.n_inner());
}

}  // namespace latcond
