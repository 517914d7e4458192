#include <doctest.h>

#include <initializer_list>

#include "atomdiode/params.hpp"

using namespace atomdiode;

TEST_CASE("velocity-unit wavenumber and detuning conversions") {
  const Atom ne{kNeonMass};

  CHECK(wavenumber_from_velocity(0.03, ne) ==
        doctest::Approx(9444307.0).epsilon(1e-6));
  CHECK(detuning_from_velocity(1.8e-11, ne) ==
        doctest::Approx(1698799.2).epsilon(1e-6));
  CHECK(detuning_from_velocity(0.6e-11, ne) ==
        doctest::Approx(566266.4).epsilon(1e-6));

  for (double v : {1e-3, 0.03, 0.8}) {
    CHECK(velocity_from_wavenumber(wavenumber_from_velocity(v, ne), ne) ==
          doctest::Approx(v).epsilon(1e-14));
    CHECK(velocity_from_detuning(detuning_from_velocity(v, ne), ne) ==
          doctest::Approx(v).epsilon(1e-14));
  }

  const Atom heavy{2.0 * kNeonMass};
  CHECK(wavenumber_from_velocity(0.03, heavy) ==
        doctest::Approx(2.0 * 9444307.0).epsilon(1e-6));
}
