#include <doctest.h>

#include <cmath>

#include "latcond/kubo.hpp"
#include "latcond/lattice.hpp"
#include "latcond/spectral.hpp"

using namespace latcond;

namespace {

struct Sample {
  Box box;
  EigenSystem es;
  Sample(int half, double lambda, std::uint64_t seed, int dim = 1,
         Bc bc = Bc::periodic, int inner = -1) {
    box.dim = dim;
    box.half_side = half;
    box.inner_half_side = (inner < 0) ? half : inner;
    box.bc = bc;
    const Vec v = sample_potential(box.n_sites(), Disorder::uniform, seed);
    es = diagonalize(hamiltonian(box, lambda, v));
  }
};

}  // namespace

TEST_CASE("paramagnetic coefficient: zero at t = 0, nonpositive, two routes agree") {
  const Sample s(3, 0.8, 31);
  const double beta = 1.0;
  const TransportPairs pairs = transport_pairs(s.box, s.es, beta, 0);
  CHECK(xi_from_pairs(pairs, 0.0) == 0.0);
  for (double t : {0.3, 1.0, 2.7, 10.0}) {
    const double fast = xi_from_pairs(pairs, t);
    CHECK(fast <= 0.0);
    CHECK(std::abs(fast - xi_paramagnetic_direct(s.box, s.es, beta, 0, t)) < 1e-10);
  }
  for (const double w : pairs.w) CHECK(w >= 0.0);
  for (const double nu : pairs.nu) CHECK(nu >= tol::zero_freq);
  CHECK(pairs.zero_mass >= 0.0);
}

TEST_CASE("paramagnetic measure: symmetric, nonnegative, reproduces sigma_p") {
  const Sample s(4, 1.2, 32);
  const double beta = 0.7;
  const AtomicMeasure mu = paramagnetic_measure(s.box, s.es, beta, 0);
  CHECK(mu.kind == MeasureKind::paramagnetic);
  CHECK(mu.clamped == 0);

  // exact +- mirror: atoms come in pairs with identical weight
  const long n = long(mu.atoms.size());
  for (long k = 0; k < n; ++k) {
    const Atom& a = mu.atoms[k];
    const Atom& b = mu.atoms[n - 1 - k];
    CHECK(a.nu == -b.nu);
    CHECK(a.weight == b.weight);
    CHECK(a.weight >= 0.0);
  }

  const TransportPairs pairs = transport_pairs(s.box, s.es, beta, 0);
  for (double t : {0.4, 1.3, 6.0})
    CHECK(std::abs(sigma_from_measure(mu, t) - xi_from_pairs(pairs, t)) < 1e-11);

  // mass of the measure = Duhamel norm of the normalized current sum
  const double mass = total_mass(mu);
  const double norm0 = fluctuation_inner(s.box, s.es, beta, 0, 0, 0.0);
  CHECK(mass == doctest::Approx(norm0).epsilon(1e-12));
  CHECK(abs_first_moment(mu) >= mass);
}

TEST_CASE("diamagnetic coefficient: clean system matches the frozen integrals") {
  Box box;
  box.dim = 1;
  box.half_side = 64;
  box.inner_half_side = 64;
  const EigenSystem es = diagonalize(hamiltonian(box, 0.0, Vec::Zero(box.n_sites())));
  CHECK(sigma_d(box, es, 0.5, 0) ==
        doctest::Approx(0.191985461488736200199).epsilon(1e-12));
  CHECK(sigma_d(box, es, 1.0, 0) ==
        doctest::Approx(0.235619775396520222099).epsilon(1e-12));
  CHECK(sigma_d(box, es, 2.0, 0) ==
        doctest::Approx(0.20910911230761544806).epsilon(1e-12));
}

TEST_CASE("diamagnetic coefficient: axes agree on a clean square lattice") {
  Box box;
  box.dim = 2;
  box.half_side = 6;
  box.inner_half_side = 6;
  const EigenSystem es = diagonalize(hamiltonian(box, 0.0, Vec::Zero(box.n_sites())));
  const double s0 = sigma_d(box, es, 1.0, 0);
  const double s1 = sigma_d(box, es, 1.0, 1);
  CHECK(s0 == doctest::Approx(s1).epsilon(1e-12));
}

TEST_CASE("full and AC measures: bookkeeping of the zero-frequency atom") {
  const Sample s(3, 0.9, 33);
  const double beta = 1.1;
  const AtomicMeasure mu = paramagnetic_measure(s.box, s.es, beta, 0);
  const double sd = sigma_d(s.box, s.es, beta, 0);

  const AtomicMeasure mu_full = full_measure(mu, sd);
  CHECK(mu_full.kind == MeasureKind::full);
  CHECK(total_mass(mu_full) == doctest::Approx(sd).epsilon(1e-12));

  // exactly one atom at zero frequency; it absorbs the mass defect
  long zeros = 0;
  double zero_weight = 0.0;
  for (const auto& a : mu_full.atoms)
    if (std::abs(a.nu) < tol::zero_freq) {
      ++zeros;
      zero_weight = a.weight;
    }
  CHECK(zeros == 1);
  double mu_zero = 0.0;
  for (const auto& a : mu.atoms)
    if (std::abs(a.nu) < tol::zero_freq) mu_zero = a.weight;
  CHECK(zero_weight ==
        doctest::Approx(mu_zero + sd - total_mass(mu)).epsilon(1e-12));

  const AtomicMeasure ac = ac_measure(mu_full);
  CHECK(ac.kind == MeasureKind::ac);
  for (const auto& a : ac.atoms) CHECK(std::abs(a.nu) >= tol::zero_freq);
  CHECK(long(ac.atoms.size()) == long(mu_full.atoms.size()) - 1);

  // step-response coefficient: zero before the kick, sigma_d at the kick
  CHECK(big_sigma(-0.5, sd, mu) == 0.0);
  CHECK(big_sigma(0.0, sd, mu) == doctest::Approx(sd).epsilon(1e-14));
  CHECK(big_sigma(2.0, sd, mu) ==
        doctest::Approx(sd + sigma_from_measure(mu, 2.0)).epsilon(1e-12));
}

TEST_CASE("frequency pairing against the time route on a padded open box") {
  const Sample s(12, 1.0, 34, 1, Bc::open, 6);
  const double beta = 1.0;
  const Vec times = Vec::LinSpaced(9, 0.0, 4.0);
  const Vec xi = xi_paramagnetic(s.box, s.es, beta, 0, times);
  const AtomicMeasure mu = paramagnetic_measure(s.box, s.es, beta, 0);
  for (long k = 0; k < times.size(); ++k)
    CHECK(std::abs(xi[k] - sigma_from_measure(mu, times[k])) <=
          1e-9 * std::max(1.0, xi.cwiseAbs().maxCoeff()));
}

TEST_CASE("Duhamel autocorrelation is bounded by beta times the GNS norm") {
  const Sample s(4, 1.5, 35);
  for (double beta : {0.4, 1.0, 3.0}) {
    const AutoCorrelation r = auto_correlation(s.box, s.es, beta, 0);
    CHECK(r.duhamel > 0.0);
    CHECK(r.state_scaled > 0.0);
    CHECK(r.ratio <= 1.0 + 1e-12);
    MESSAGE("beta = ", beta, ": Duhamel/GNS ratio = ", r.ratio);
  }
}

TEST_CASE("open boundary without padding is rejected") {
  Box box;
  box.dim = 1;
  box.half_side = 4;
  box.inner_half_side = 4;
  box.bc = Bc::open;
  const EigenSystem es = diagonalize(hamiltonian(box, 0.0, Vec::Zero(box.n_sites())));
  CHECK_THROWS_AS(transport_pairs(box, es, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(sigma_d(box, es, 1.0, 0), ConfigError);
}
