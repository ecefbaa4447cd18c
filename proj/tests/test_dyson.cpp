#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "latcond/dyson.hpp"
#include "latcond/lattice.hpp"
#include "latcond/spectral.hpp"

using namespace latcond;

TEST_CASE("Gauss-Legendre rule: weights sum to 2, exact for high-degree monomials") {
  Vec x, w;
  gauss_legendre(8, x, w);
  REQUIRE(x.size() == 8);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  for (long k = 0; k + 1 < x.size(); ++k) CHECK(x[k] < x[k + 1]);
  // degree 15 is integrated exactly by 8 nodes; odd powers vanish
  double m14 = 0.0, m15 = 0.0;
  for (long k = 0; k < 8; ++k) {
    m14 += w[k] * std::pow(x[k], 14);
    m15 += w[k] * std::pow(x[k], 15);
  }
  CHECK(m14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  CHECK(std::abs(m15) < 1e-15);
}

namespace {

CVec delta_state(long n, long k) {
  CVec psi = CVec::Zero(n);
  psi[k] = Cplx(1.0, 0.0);
  return psi;
}

}  // namespace

TEST_CASE("hopping expansion reduces to the Taylor polynomial when lambda = 0") {
  const long n = 8;
  const Mat lap = chain_laplacian(n);
  const Vec v = sample_potential(n, Disorder::uniform, 5);
  const CVec psi0 = delta_state(n, 3);
  const double tau = 0.4;
  for (int orders : {1, 3, 5}) {
    const DysonResult r = dyson_propagate(lap, v, 0.0, tau, orders, 1, psi0);
    CVec taylor = CVec::Zero(n);
    CVec term = psi0;
    for (int k = 0; k < orders; ++k) {
      taylor += term;
      term = Cplx(0.0, -tau / double(k + 1)) * (lap * term);
    }
    CHECK((r.psi - taylor).norm() < 1e-12);
  }
}

TEST_CASE("truncation error: within the factorial bound and strictly improving") {
  const long n = 8;
  const Mat lap = chain_laplacian(n);
  const Vec v = sample_potential(n, Disorder::uniform, 11);
  const CVec psi0 = delta_state(n, 4);
  const double tau = 0.5;
  double prev = 2.0;
  for (int orders = 1; orders <= 6; ++orders) {
    const DysonResult r = dyson_propagate(lap, v, 1.0, tau, orders, 1, psi0);
    CHECK(r.error <= r.bound);
    CHECK(r.error < prev);
    CHECK(r.bound == doctest::Approx(std::pow(4.0 * 1.0 * tau, orders) /
                                     std::tgamma(orders + 1.0))
                         .epsilon(1e-12));
    prev = r.error;
  }

  // negative times work the same way
  const DysonResult back = dyson_propagate(lap, v, 1.0, -tau, 4, 1, psi0);
  CHECK(back.error <= back.bound);
}

TEST_CASE("zero time is the identity; dimension mismatches are rejected") {
  const long n = 6;
  const Mat lap = chain_laplacian(n);
  const Vec v = sample_potential(n, Disorder::rademacher, 2);
  const CVec psi0 = delta_state(n, 2);
  const DysonResult r = dyson_propagate(lap, v, 0.7, 0.0, 3, 1, psi0);
  CHECK((r.psi - psi0).norm() < 1e-14);
  CHECK(r.error < 1e-14);
  CHECK(r.bound == 0.0);

  CHECK_THROWS_AS(dyson_propagate(lap, Vec::Zero(n + 1), 1.0, 0.1, 2, 1, psi0),
                  ConfigError);
  CHECK_THROWS_AS(dyson_propagate(lap, v, 1.0, 0.1, 0, 1, psi0), ConfigError);
}

TEST_CASE("single-site characteristic functions") {
  CHECK(characteristic_function(Disorder::none, 3.2) == 1.0);
  CHECK(characteristic_function(Disorder::rademacher, 0.9) ==
        doctest::Approx(std::cos(0.9)).epsilon(1e-15));
  CHECK(characteristic_function(Disorder::uniform, 2.0) ==
        doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(characteristic_function(Disorder::uniform, 0.0) == 1.0);
  // series branch joins the closed form smoothly
  const double below = characteristic_function(Disorder::uniform, 0.99e-8);
  const double above = characteristic_function(Disorder::uniform, 1.01e-8);
  CHECK(std::abs(below - above) < 1e-15);
}

TEST_CASE("phase products factorize over sites and accumulate on repeats") {
  const double a = 0.8, b = 1.7;
  CHECK(phase_product_expectation(Disorder::uniform, {{0, a}, {5, b}}) ==
        doctest::Approx(characteristic_function(Disorder::uniform, a) *
                        characteristic_function(Disorder::uniform, b))
            .epsilon(1e-15));
  CHECK(phase_product_expectation(Disorder::uniform, {{3, a}, {3, a}}) ==
        doctest::Approx(characteristic_function(Disorder::uniform, 2.0 * a))
            .epsilon(1e-15));
  // opposite phases on one site cancel exactly
  CHECK(phase_product_expectation(Disorder::rademacher, {{1, a}, {1, -a}}) == 1.0);
  CHECK(phase_product_expectation(Disorder::uniform, {}) == 1.0);
}

TEST_CASE("sampled potentials reproduce the two-site phase expectation") {
  // E[cos(s (V_x - V_y))] = chi(s)^2 for independent symmetric sites
  const double s = 1.3;
  const long n_samples = 20000;
  double acc = 0.0;
  for (long k = 0; k < n_samples; ++k) {
    const Vec v = sample_potential(2, Disorder::uniform, derive_seed(77, k));
    acc += std::cos(s * (v[0] - v[1]));
  }
  acc /= double(n_samples);
  const double chi = characteristic_function(Disorder::uniform, s);
  // variance of cos is at most 1/2; five sigma of the sample mean
  CHECK(std::abs(acc - chi * chi) < 5.0 * std::sqrt(0.5 / double(n_samples)));
}
