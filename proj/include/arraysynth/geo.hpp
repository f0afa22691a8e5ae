// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/types.hpp"

namespace arraysynth {

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

struct ScanAngles {
  double theta_deg = 0.0;  // off-nadir angle
  double phi_deg = 0.0;    // azimuth from north, clockwise toward east
};

/// Scan angles that point a nadir-looking array at a ground target, on a
/// spherical Earth:
///   theta0 = atan(sin(D) / (1 + h/R_E - cos(D)))  with D the central angle,
///   phi0   = initial bearing from the sub-satellite point to the target.
/// Throws std::domain_error when the target lies at or beyond the Earth limb.
ScanAngles latlon_to_scan(const GeoPoint& target, const GeoPoint& subsatellite, double altitude_km);

}  // namespace arraysynth
