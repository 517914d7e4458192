#include <doctest.h>

#include <cmath>
#include <random>

#include "atomdiode/scheme.hpp"
#include "helpers.hpp"

using namespace atomdiode;
using atomdiode::testing::three_level_diode;
using atomdiode::testing::two_level_diode;

TEST_CASE("effective detunings reproduce frozen reference values") {
  const SchemeConfig cfg = two_level_diode();

  auto d0 = effective_detunings_two_level(cfg, {0.1, 0.0, 0});
  CHECK(d0[0] == doctest::Approx(1557134.6).epsilon(1e-6));

  auto d30 = effective_detunings_two_level(cfg, {0.1, M_PI / 6.0, 0});
  CHECK(d30[0] == doctest::Approx(1084919.25).epsilon(1e-6));
  CHECK(d30[1] == doctest::Approx(-897209.17).epsilon(1e-6));
}

TEST_CASE("excited-channel wavenumber equals the closed-form q") {
  const Atom ne{kNeonMass};
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> speed(0.005, 0.8);
  std::uniform_real_distribution<double> angle(-1.48, 1.48);
  std::uniform_real_distribution<double> dvs(-3e-11, 3e-11);

  for (int i = 0; i < 1000; ++i) {
    SchemeConfig cfg = two_level_diode(dvs(rng), dvs(rng));
    const Incidence inc{speed(rng), angle(rng), 0};
    const ChannelSet ch = build_channels(cfg, inc);

    const double kx = ch.kx_incident;
    const double ky = wavenumber_from_velocity(
        inc.w * std::sin(inc.theta), ne);
    const double kp = cfg.pump.wavenumber(ne);
    const double dp = cfg.pump.detuning(ne);
    const complexd q = std::sqrt(
        complexd(kx * kx - kp * kp - 2.0 * ky * kp +
                     2.0 * ne.mass * dp / constants::hbar,
                 0.0));
    const complexd qb = q.imag() < 0.0 ? -q : q;
    CHECK(std::abs(ch.kx(1) - qb) <= 1e-9 * std::abs(qb) + 1e-9);
  }
}

TEST_CASE("third-channel wavenumber of the STIRAP scheme matches q''") {
  const Atom ne{kNeonMass};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> speed(0.005, 0.8);
  std::uniform_real_distribution<double> angle(-1.48, 1.48);

  for (int i = 0; i < 1000; ++i) {
    SchemeConfig cfg = three_level_diode();
    const Incidence inc{speed(rng), angle(rng), 0};
    const ChannelSet ch = build_channels(cfg, inc);

    const double kx = ch.kx_incident;
    const double ky =
        wavenumber_from_velocity(inc.w * std::sin(inc.theta), ne);
    const double kps = cfg.pump.wavenumber(ne) - cfg.stokes.wavenumber(ne);
    const double dps = cfg.pump.detuning(ne) - cfg.stokes.detuning(ne);
    const complexd q2 = std::sqrt(
        complexd(kx * kx - kps * kps - 2.0 * ky * kps +
                     2.0 * ne.mass * dps / constants::hbar,
                 0.0));
    const complexd q2b = q2.imag() < 0.0 ? -q2 : q2;
    CHECK(std::abs(ch.kx(2) - q2b) <= 1e-9 * std::abs(q2b) + 1e-9);
  }
}

TEST_CASE("channel wavenumber branch: decaying closed channels") {
  const Atom ne{kNeonMass};
  Eigen::VectorXcd diag(4);
  diag << 0.0, 5e7, -5e7, complexd(1e6, -3e5);
  const Eigen::VectorXcd kx = channel_wavenumbers(1e7, diag, ne);

  CHECK(kx(0) == complexd(1e7, 0.0));
  CHECK(kx(1).real() == 0.0);      // closed: purely evanescent
  CHECK(kx(1).imag() > 0.0);
  CHECK(kx(2).imag() == 0.0);      // open
  CHECK(kx(2).real() > 1e7);
  CHECK(kx(3).imag() > 0.0);       // lossy channel still decays rightward
}

TEST_CASE("transverse wavenumber ladder follows the laser directions") {
  const Atom ne{kNeonMass};
  const SchemeConfig cfg = three_level_diode();
  const Incidence inc{0.1, 0.3, 0};
  const ChannelSet ch = build_channels(cfg, inc);

  const double ky = wavenumber_from_velocity(0.1 * std::sin(0.3), ne);
  CHECK(ch.ky(0) == doctest::Approx(ky));
  CHECK(ch.ky(1) == doctest::Approx(ky + cfg.pump.wavenumber(ne)));
  CHECK(ch.ky(2) ==
        doctest::Approx(ky + cfg.pump.wavenumber(ne) -
                        cfg.stokes.wavenumber(ne)));
  CHECK(ch.ky(3) == doctest::Approx(ch.ky(2) + cfg.quench.wavenumber(ne)));
}

TEST_CASE("build_channels rejects bad incidence") {
  const SchemeConfig cfg = two_level_diode();
  CHECK_THROWS_AS(build_channels(cfg, {0.0, 0.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_channels(cfg, {0.1, 0.0, 3}), std::invalid_argument);
}
