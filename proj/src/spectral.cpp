#include "latcond/spectral.hpp"

#include <cmath>
#include <utility>

namespace latcond {

EigenSystem diagonalize(const Mat& h) {
  if (h.rows() != h.cols()) throw ConfigError("matrix is not square");
  if (!h.allFinite()) throw SolverError("matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success)
    throw SolverError("symmetric eigensolver did not converge");
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

double fermi_weight(double alpha, double beta, double kappa) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (alpha < 0.0 || alpha > beta) throw ConfigError("need 0 <= alpha <= beta");
  // Both branches keep every exponent <= 0.
  if (kappa >= 0.0) return std::exp((alpha - beta) * kappa) / (1.0 + std::exp(-beta * kappa));
  return std::exp(alpha * kappa) / (1.0 + std::exp(beta * kappa));
}

Mat fermi_symbol(const EigenSystem& es, double beta) {
  const long n = es.size();
  Vec f(n);
  for (long i = 0; i < n; ++i) f[i] = fermi_weight(0.0, beta, es.energies[i]);
  return es.vectors * f.asDiagonal() * es.vectors.transpose();
}

CMat propagator(const EigenSystem& es, double t) {
  const long n = es.size();
  CVec phase(n);
  for (long i = 0; i < n; ++i)
    phase[i] = std::exp(Cplx(0.0, -t * es.energies[i]));
  return es.vectors.cast<Cplx>() * phase.asDiagonal() *
         es.vectors.transpose().cast<Cplx>();
}

double duhamel_alpha_weight(double d_e, double beta) {
  const double z = beta * d_e;
  if (std::abs(z) < tol::alpha_weight_series)
    return beta * (1.0 + z / 2.0 + z * z / 6.0);
  return std::expm1(z) / d_e;
}

namespace {
double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2.0 * x)) - M_LN2;
}
double log_sinh(double x) {  // x > 0
  return x + std::log1p(-std::exp(-2.0 * x)) - M_LN2;
}
}  // namespace

double kubo_mori_kernel(double a, double b, double beta) {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (a < b) std::swap(a, b);  // symmetric in (a, b); fix an order so the
                               // result is bitwise independent of it
  const double d = a - b;
  const double z = beta * d;
  if (std::abs(z) < tol::alpha_weight_series) {
    // series branch of the alpha weight times the factored Fermi pair
    const double w = beta * (1.0 + z / 2.0 + z * z / 6.0);
    return fermi_weight(0.0, beta, a) * fermi_weight(0.0, beta, -b) * w;
  }
  const double u = 0.5 * z;
  const double ca = 0.5 * beta * a;
  const double cb = 0.5 * beta * b;
  if (std::abs(u) < 300.0 && std::abs(ca) < 300.0 && std::abs(cb) < 300.0)
    return std::sinh(u) / (2.0 * d * std::cosh(ca) * std::cosh(cb));
  return std::exp(log_sinh(std::abs(u)) - std::log(2.0 * std::abs(d)) -
                  log_cosh(ca) - log_cosh(cb));
}

}  // namespace latcond
