// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/bessel.hpp"
#include "arraysynth/types.hpp"

#include <cmath>
#include <stdexcept>

namespace arraysynth {

/// Normalized radiated power of one open-ended-waveguide element, relative to
/// boresight. The two polarization components combine to cos^2(phi) +
/// sin^2(phi) = 1, leaving the squared radial envelope (2 J1(x)/x)^2 with
/// x = k a sin(theta); far-field range factors are dropped.
inline double unit_cell_power(double theta_deg, double /*phi_deg*/, const ArrayGeometry& geometry) {
  if (theta_deg < 0.0 || theta_deg > 90.0)
    throw std::domain_error("unit_cell_power: theta must lie in [0, 90] degrees");
  const double x = kTwoPi * geometry.aperture_radius_wl * std::sin(theta_deg * kDegToRad);
  const double envelope = 2.0 * bessel_j1_over_x(x);  // 1 at boresight
  return envelope * envelope;
}

/// Steering phase of element (m, n) for scan direction (theta0, phi0):
/// -k sin(theta0) (m d_x cos(phi0) + n d_y sin(phi0)), in radians.
/// The planar array has no vertical stacking, so no d_z term appears.
inline double steering_phase(int m, int n, double theta0_deg, double phi0_deg, const ArrayGeometry& geometry) {
  if (m < 0 || m >= geometry.rows || n < 0 || n >= geometry.cols)
    throw std::out_of_range("steering_phase: element index out of bounds");
  const double st = std::sin(theta0_deg * kDegToRad);
  const double cp = std::cos(phi0_deg * kDegToRad);
  const double sp = std::sin(phi0_deg * kDegToRad);
  return -kTwoPi * st * (m * geometry.spacing_x_wl * cp + n * geometry.spacing_y_wl * sp);
}

/// Complex weight matrix for one beam: binary mask times steering phases.
inline ComplexMatrix steered_weights(const Mask& mask, const ArrayGeometry& geometry, double theta0_deg,
                                     double phi0_deg) {
  ComplexMatrix w(geometry.rows, geometry.cols);
  for (int m = 0; m < geometry.rows; ++m)
    for (int n = 0; n < geometry.cols; ++n) {
      if (mask(m, n) != 0) {
        const double psi = steering_phase(m, n, theta0_deg, phi0_deg, geometry);
        w(m, n) = Complex(std::cos(psi), std::sin(psi));
      } else {
        w(m, n) = Complex(0.0, 0.0);
      }
    }
  return w;
}

}  // namespace arraysynth
