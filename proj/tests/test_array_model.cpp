// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/array_pattern.hpp"
#include "arraysynth/unit_cell.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace arraysynth;

namespace {

ArrayGeometry geometry_16() { return {}; }

ArrayGeometry small_geometry(int rows, int cols) {
  ArrayGeometry g;
  g.rows = rows;
  g.cols = cols;
  return g;
}

Mask full_mask(const ArrayGeometry& g) { return Mask::Ones(g.rows, g.cols); }

}  // namespace

TEST_CASE("unit cell peaks at boresight with the series limit") {
  const ArrayGeometry g = geometry_16();
  CHECK(unit_cell_power(0.0, 0.0, g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit_cell_power(0.0, 123.4, g) == unit_cell_power(0.0, 0.0, g));   // phi drops out
  CHECK(unit_cell_power(0.0, 90.0, g) == unit_cell_power(0.0, 0.0, g));
}

TEST_CASE("unit cell at the horizon matches the Bessel oracle") {
  const ArrayGeometry g = geometry_16();  // a = 0.3 wavelengths
  // x = 2 pi 0.3, envelope 2 J1(x)/x, power relative to boresight (mpmath)
  const double p = unit_cell_power(90.0, 0.0, g);
  CHECK(p == doctest::Approx(0.380641861652523535).epsilon(1e-12));
  const double x = kTwoPi * 0.3;
  const double env = 2.0 * oracle::j1_series(x) / x;
  CHECK(p == doctest::Approx(env * env).epsilon(1e-11));
}

TEST_CASE("unit cell rejects theta outside the forward hemisphere") {
  const ArrayGeometry g = geometry_16();
  CHECK_THROWS_AS(unit_cell_power(-0.1, 0.0, g), std::domain_error);
  CHECK_THROWS_AS(unit_cell_power(90.1, 0.0, g), std::domain_error);
}

TEST_CASE("steering phase: broadside is zero, scans match hand values") {
  const ArrayGeometry g = geometry_16();  // d = 0.6
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) CHECK(steering_phase(m, n, 0.0, 37.0, g) == doctest::Approx(0.0));
  CHECK(steering_phase(1, 0, 30.0, 0.0, g) == doctest::Approx(-0.6 * kPi).epsilon(1e-12));
  CHECK(steering_phase(0, 2, 30.0, 90.0, g) == doctest::Approx(-1.2 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(steering_phase(16, 0, 0.0, 0.0, g), std::out_of_range);
}

TEST_CASE("single active element reproduces the unit cell pointwise") {
  const ArrayGeometry g = small_geometry(4, 4);
  Mask mask = Mask::Zero(4, 4);
  mask(2, 1) = 1;
  const AngularGrid grid = AngularGrid::hemisphere(1.0, 5.0);
  const PowerPattern p = array_pattern(steered_weights(mask, g, 0.0, 0.0), g, grid);
  for (int i = 0; i < grid.n_theta; ++i) {
    const double expected = unit_cell_power(grid.theta_deg(i), 0.0, g);  // already 1 at boresight
    for (int j = 0; j < grid.n_phi; ++j) CHECK(std::abs(p.values(i, j) - expected) < 1e-12);
  }
}

TEST_CASE("array_pattern matches an independent double-loop oracle on 4x4") {
  const ArrayGeometry g = small_geometry(4, 4);
  Mask mask(4, 4);
  mask << 1, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1;
  const ComplexMatrix w = steered_weights(mask, g, 12.0, 40.0);
  const AngularGrid grid = AngularGrid::cap(60.0, 2.0, 10.0);
  const PowerPattern p = array_pattern(w, g, grid);

  // oracle normalization: find its own max over the same grid
  double omax = 0.0;
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      omax = std::max(omax, oracle::pattern_value(w, g, grid.theta_deg(i), grid.phi_deg(j)));
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j) {
      const double expected = oracle::pattern_value(w, g, grid.theta_deg(i), grid.phi_deg(j)) / omax;
      CHECK(p.values(i, j) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("pattern normalization: peak exactly 1, all values in [0,1]") {
  const ArrayGeometry g = small_geometry(8, 8);
  Mask mask = full_mask(g);
  mask(3, 3) = mask(4, 2) = 0;
  const PowerPattern p = array_pattern(steered_weights(mask, g, 5.0, 120.0), g, AngularGrid::hemisphere(0.5, 2.0));
  CHECK(p.values.maxCoeff() == 1.0);
  CHECK(p.values.minCoeff() >= 0.0);
  CHECK(p.values(p.peak_i, p.peak_j) == 1.0);
}

TEST_CASE("all-off mask is rejected") {
  const ArrayGeometry g = small_geometry(4, 4);
  CHECK_THROWS_WITH_AS(array_pattern(ComplexMatrix::Zero(4, 4), g, AngularGrid::hemisphere(5.0, 30.0)),
                       "array_pattern: no active elements", std::invalid_argument);
}

TEST_CASE("180-degree rotational symmetry of broadside patterns") {
  const ArrayGeometry g = small_geometry(6, 6);
  Mask mask = Mask::Zero(6, 6);
  // centro-symmetric pair pattern
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if ((i * 7 + j * 3) % 4 == 0) mask(i, j) = mask(5 - i, 5 - j) = 1;
  const AngularGrid grid = AngularGrid::hemisphere(1.0, 1.0);  // 360 phi samples
  const PowerPattern p = array_pattern(steered_weights(mask, g, 0.0, 0.0), g, grid);
  for (int i = 0; i < grid.n_theta; i += 7)
    for (int j = 0; j < grid.n_phi; ++j)
      CHECK(p.values(i, j) == doctest::Approx(p.values(i, (j + 180) % 360)).epsilon(1e-9));
}

TEST_CASE("steering puts the peak at the scan direction") {
  const ArrayGeometry g = geometry_16();
  const AngularGrid grid = AngularGrid::hemisphere(0.25, 1.0);
  for (double theta0 : {0.0, 10.0, 30.0}) {
    const PowerPattern p = array_pattern(steered_weights(full_mask(g), g, theta0, 45.0), g, grid);
    CHECK(std::abs(p.peak_theta_deg - theta0) <= grid.theta_step_deg + 1e-12);
    if (theta0 > 0.0) {
      double dphi = std::abs(p.peak_phi_deg - 45.0);
      dphi = std::min(dphi, 360.0 - dphi);
      CHECK(dphi <= grid.phi_step_deg + 1e-12);
    }
  }
}

TEST_CASE("broadside array factor of a symmetric mask is essentially real") {
  const ArrayGeometry g = geometry_16();
  const ComplexMatrix w = steered_weights(full_mask(g), g, 0.0, 0.0);
  for (double theta : {0.0, 7.3, 22.0, 61.0})
    for (double phi : {0.0, 30.0, 111.0, 290.0}) {
      const Complex af = array_factor(w, g, theta, phi);
      CHECK(std::abs(af.imag()) < 1e-12 * g.element_count());
    }
}
