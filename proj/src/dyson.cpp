#include "latcond/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "latcond/spectral.hpp"

namespace latcond {

void gauss_legendre(long n, Vec& nodes, Vec& weights) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  nodes.resize(n);
  weights.resize(n);
  for (long k = 0; k < n; ++k) {
    // Chebyshev initial guess, then Newton on P_n
    double x = std::cos(M_PI * (double(k) + 0.75) / (double(n) + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = x;
      for (long j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / double(j);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      const double dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
    nodes[n - 1 - k] = x;
    weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

// Values of P_0..P_deg at x, filled into row-storage p[j].
void legendre_values(double x, long deg, std::vector<double>& p) {
  p.resize(deg + 1);
  p[0] = 1.0;
  if (deg >= 1) p[1] = x;
  for (long j = 2; j <= deg; ++j)
    p[j] = ((2.0 * j - 1.0) * x * p[j - 1] - (j - 1.0) * p[j - 2]) / double(j);
}

// Q maps node values of f to values of int_{-1}^{x_k} f, exactly for
// polynomials of degree < m.
Mat cumulative_matrix(const Vec& nodes, const Vec& weights) {
  const long m = nodes.size();
  Mat coeff(m, m);  // values -> Legendre coefficients
  std::vector<double> p;
  for (long k = 0; k < m; ++k) {
    legendre_values(nodes[k], m, p);
    for (long j = 0; j < m; ++j)
      coeff(j, k) = (2.0 * j + 1.0) / 2.0 * weights[k] * p[j];
  }
  Mat prim(m, m);  // primitive of P_j evaluated at the nodes
  for (long k = 0; k < m; ++k) {
    legendre_values(nodes[k], m, p);
    prim(k, 0) = nodes[k] + 1.0;
    for (long j = 1; j < m; ++j)
      prim(k, j) = (p[j + 1] - p[j - 1]) / (2.0 * j + 1.0);
  }
  return prim * coeff;
}

}  // namespace

DysonResult dyson_propagate(const Mat& lap, const Vec& v, double lambda,
                            double tau, int orders, int dim, const CVec& psi0,
                            long nodes) {
  const long n = lap.rows();
  if (lap.cols() != n || v.size() != n || psi0.size() != n)
    throw ConfigError("dyson: dimension mismatch");
  if (orders < 1) throw ConfigError("dyson: need at least one order");
  if (nodes < orders) nodes = orders;  // keep collocation exact for lambda = 0

  DysonResult r;
  Mat h = lap;
  h.diagonal() += lambda * v;
  const EigenSystem es = diagonalize(h);
  r.exact = propagator(es, tau) * psi0;

  double log_fact = 0.0;
  for (int k = 2; k <= orders; ++k) log_fact += std::log(double(k));
  r.bound = std::exp(double(orders) * std::log(4.0 * dim * std::abs(tau)) - log_fact);
  if (tau == 0.0) r.bound = (orders > 0) ? 0.0 : 1.0;

  if (tau == 0.0) {
    r.psi = psi0;
    r.error = (r.psi - r.exact).norm();
    return r;
  }

  Vec x, w;
  gauss_legendre(nodes, x, w);
  const Mat q = 0.5 * tau * cumulative_matrix(x, w);
  Vec u(nodes);
  for (long k = 0; k < nodes; ++k) u[k] = 0.5 * tau * (x[k] + 1.0);

  // node-wise conjugated hop application: g(:,k) = -i W(u_k) y(:,k)
  const auto apply = [&](const CMat& y) {
    CMat g(n, nodes);
    for (long k = 0; k < nodes; ++k) {
      CVec col = y.col(k);
      for (long s = 0; s < n; ++s)
        col[s] *= std::exp(Cplx(0.0, -u[k] * lambda * v[s]));
      CVec hop = lap * col;
      for (long s = 0; s < n; ++s)
        hop[s] *= std::exp(Cplx(0.0, u[k] * lambda * v[s]));
      g.col(k) = Cplx(0.0, -1.0) * hop;
    }
    return g;
  };

  const CMat qt = q.transpose().cast<Cplx>();
  const CVec wq = (0.5 * tau * w).cast<Cplx>();
  CMat level = CMat::Zero(n, nodes);
  for (long k = 0; k < nodes; ++k) level.col(k) = psi0;
  CVec total = psi0;  // I_0(tau)
  for (int ord = 1; ord < orders; ++ord) {
    const CMat g = apply(level);
    total += g * wq;  // I_ord(tau) by full quadrature
    level = g * qt;   // I_ord at the nodes
  }

  r.psi = total;
  for (long s = 0; s < n; ++s)
    r.psi[s] *= std::exp(Cplx(0.0, -tau * lambda * v[s]));
  r.error = (r.psi - r.exact).norm();
  return r;
}

double characteristic_function(Disorder kind, double s) {
  switch (kind) {
    case Disorder::uniform:
      if (std::abs(s) < 1e-8) {
        const double s2 = s * s;
        return 1.0 - s2 / 6.0 + s2 * s2 / 120.0;
      }
      return std::sin(s) / s;
    case Disorder::rademacher:
      return std::cos(s);
    case Disorder::none:
      return 1.0;
  }
  throw ConfigError("unknown disorder kind");
}

double phase_product_expectation(
    Disorder kind, const std::vector<std::pair<long, double>>& site_phases) {
  std::map<long, double> per_site;
  for (const auto& [site, s] : site_phases) per_site[site] += s;
  double prod = 1.0;
  for (const auto& [site, s] : per_site) {
    (void)site;
    prod *= characteristic_function(kind, s);
  }
  return prod;
}

}  // namespace latcond
