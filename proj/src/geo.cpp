// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/geo.hpp"

#include <cmath>
#include <stdexcept>

namespace arraysynth {

ScanAngles latlon_to_scan(const GeoPoint& target, const GeoPoint& subsatellite, double altitude_km) {
  if (altitude_km <= 0.0) throw std::invalid_argument("latlon_to_scan: altitude must be positive");
  const double lat1 = subsatellite.lat_deg * kDegToRad;
  const double lat2 = target.lat_deg * kDegToRad;
  const double dlon = (target.lon_deg - subsatellite.lon_deg) * kDegToRad;

  // Haversine central angle, stable near zero.
  const double sh = std::sin(0.5 * (lat2 - lat1));
  const double sl = std::sin(0.5 * dlon);
  const double h = sh * sh + std::cos(lat1) * std::cos(lat2) * sl * sl;
  const double central = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));

  const double limb = std::acos(kEarthRadiusKm / (kEarthRadiusKm + altitude_km));
  if (central >= limb - 1e-12) throw std::domain_error("latlon_to_scan: beam center not visible");

  ScanAngles out;
  out.theta_deg = std::atan(std::sin(central) / (1.0 + altitude_km / kEarthRadiusKm - std::cos(central))) * kRadToDeg;

  const double y = std::sin(dlon) * std::cos(lat2);
  const double x = std::cos(lat1) * std::sin(lat2) - std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
  double bearing = std::atan2(y, x) * kRadToDeg;
  if (bearing < 0.0) bearing += 360.0;
  out.phi_deg = central > 0.0 ? bearing : 0.0;
  return out;
}

}  // namespace arraysynth
