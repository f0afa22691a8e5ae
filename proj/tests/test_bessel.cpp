// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/bessel.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using arraysynth::bessel_j1;
using arraysynth::bessel_j1_over_x;

TEST_CASE("bessel_j1 matches frozen high-precision values") {
  // mpmath, 30 digits
  CHECK(bessel_j1(0.5) == doctest::Approx(0.242268457674873886).epsilon(1e-12));
  CHECK(bessel_j1(1.0) == doctest::Approx(0.440050585744933516).epsilon(1e-12));
  CHECK(bessel_j1(1.885) == doctest::Approx(0.581472000714704050).epsilon(1e-12));
  CHECK(bessel_j1(3.0) == doctest::Approx(0.339058958525936459).epsilon(1e-12));
  CHECK(bessel_j1(5.0) == doctest::Approx(-0.327579137591465222).epsilon(1e-12));
  CHECK(bessel_j1(8.0) == doctest::Approx(0.234636346853914624).epsilon(1e-12));
  CHECK(bessel_j1(12.0) == doctest::Approx(-0.223447104490627612).epsilon(1e-10));
  CHECK(bessel_j1(15.0) == doctest::Approx(0.205104038613522761).epsilon(1e-10));
  CHECK(bessel_j1(30.0) == doctest::Approx(-0.118751062616622937).epsilon(1e-10));
}

TEST_CASE("bessel_j1 agrees with the series oracle inside the series branch") {
  for (double x = 0.0; x <= 11.5; x += 0.173)
    CHECK(bessel_j1(x) == doctest::Approx(oracle::j1_series(x)).epsilon(1e-11));
}

TEST_CASE("bessel_j1 agrees with the standard library across both branches") {
  for (double x = 0.01; x <= 40.0; x += 0.0917) {
    const double ref = std::cyl_bessel_j(1, x);
    CHECK(bessel_j1(x) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("bessel_j1 is odd and zero at the origin") {
  CHECK(bessel_j1(0.0) == 0.0);
  for (double x : {0.3, 2.0, 9.0, 17.0}) CHECK(bessel_j1(-x) == doctest::Approx(-bessel_j1(x)).epsilon(1e-15));
}

TEST_CASE("bessel_j1_over_x handles the removable singularity") {
  CHECK(bessel_j1_over_x(0.0) == 0.5);
  CHECK(bessel_j1_over_x(1e-12) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bessel_j1_over_x(1.885) == doctest::Approx(0.308473209928224960).epsilon(1e-12));
  CHECK(bessel_j1_over_x(14.0) == doctest::Approx(bessel_j1(14.0) / 14.0).epsilon(1e-14));
  CHECK(bessel_j1_over_x(-3.0) == doctest::Approx(bessel_j1_over_x(3.0)).epsilon(1e-15));
}
