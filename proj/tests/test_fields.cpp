#include <doctest.h>

#include <cmath>

#include "latcond/fields.hpp"
#include "latcond/kubo.hpp"
#include "latcond/lattice.hpp"
#include "latcond/spectral.hpp"

using namespace latcond;

TEST_CASE("pulse shape: peak, odd field, derivative relation, truncation") {
  const Pulse p;  // amp 1, center 4, width 0.5, trunc 6, scale 1
  CHECK(p.potential(4.0) == 1.0);
  CHECK(p.field(4.0) == 0.0);
  for (double d : {0.25, 0.75, 1.5}) CHECK(p.field(4.0 + d) == -p.field(4.0 - d));

  const double h = 1e-5;
  for (double s : {3.2, 4.0, 4.9, 5.5}) {
    const double fd = -(p.potential(s + h) - p.potential(s - h)) / (2.0 * h);
    CHECK(p.field(s) == doctest::Approx(fd).epsilon(1e-8));
  }

  CHECK(p.support_lo() == -2.0);
  CHECK(p.support_hi() == 10.0);
  CHECK(p.potential(10.1) == 0.0);
  CHECK(p.field(-2.5) == 0.0);

  Pulse bad = p;
  bad.width = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = p;
  bad.time_scale = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("pulse moments: zero field integral, first moment equals potential area") {
  const Pulse p;
  const PulseMoments m = pulse_moments(p);
  CHECK(std::abs(m.integral_e) < 1e-12);
  CHECK(m.integral_g ==
        doctest::Approx(std::sqrt(2.0 * M_PI) * 0.5).epsilon(1e-9));
  CHECK(m.first_moment_e == doctest::Approx(m.integral_g).epsilon(1e-9));

  // stretching the pulse in time scales the potential area linearly
  const PulseMoments m2 = pulse_moments(p.rescaled(2.0));
  CHECK(m2.integral_g == doctest::Approx(2.0 * m.integral_g).epsilon(1e-9));
  CHECK(m2.first_moment_e == doctest::Approx(m2.integral_g).epsilon(1e-9));

  CHECK_THROWS_AS(pulse_moments(p, 2), ConfigError);
}

namespace {

struct HeatFixture {
  Box box;
  AtomicMeasure mu;
  double sd;
  HeatFixture() {
    box.dim = 1;
    box.half_side = 8;
    box.inner_half_side = 8;
    const Vec v = sample_potential(box.n_sites(), Disorder::uniform, 9);
    const EigenSystem es = diagonalize(hamiltonian(box, 0.8, v));
    mu = paramagnetic_measure(box, es, 0.7, 0);
    sd = sigma_d(box, es, 0.7, 0);
  }
};

}  // namespace

TEST_CASE("heat production: time and frequency routes agree") {
  const HeatFixture fx;
  const Pulse p;
  const HeatResult r = heat_production(fx.mu, fx.sd, p);
  CHECK(std::abs(r.field_integral) < 1e-12);
  CHECK(r.q_dia < 1e-18);
  CHECK(r.q_time > 0.0);
  CHECK(std::abs(r.q_time - r.q_freq) < 1e-6 * std::abs(r.q_time));

  // heating is quadratic in the field amplitude and linear in the profile norm
  const HeatResult r2 = heat_production(fx.mu, fx.sd, p, 513, 769, 2.0);
  CHECK(r2.q_time == doctest::Approx(2.0 * r.q_time).epsilon(1e-13));
  CHECK(r2.q_freq == doctest::Approx(2.0 * r.q_freq).epsilon(1e-13));

  Pulse doubled = p;
  doubled.amp = 2.0;
  const HeatResult r4 = heat_production(fx.mu, fx.sd, doubled);
  CHECK(r4.q_time == doctest::Approx(4.0 * r.q_time).epsilon(1e-12));

  // the two routes also agree for a stretched pulse
  const HeatResult slow = heat_production(fx.mu, fx.sd, p.rescaled(4.0));
  CHECK(slow.q_time > 0.0);
  CHECK(std::abs(slow.q_time - slow.q_freq) < 1e-6 * std::abs(slow.q_time));
}

TEST_CASE("sampled-field interface rejects bad grids") {
  const HeatFixture fx;
  Vec grid(3), field(3);
  grid << 0.0, 0.1, 0.25;
  field << 0.0, 1.0, 0.0;
  CHECK_THROWS_AS(heat_production_sampled(fx.mu, fx.sd, grid, field),
                  ConfigError);
  CHECK_THROWS_AS(heat_production_sampled(fx.mu, fx.sd, Vec::Zero(2), Vec::Zero(2)),
                  ConfigError);
  CHECK_THROWS_AS(heat_production(fx.mu, fx.sd, Pulse{}, 2, 769), ConfigError);
}
