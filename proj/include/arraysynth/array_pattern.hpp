// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/types.hpp"

namespace arraysynth {

/// Array factor of one beam at a single direction:
/// sum_{m,n} W_mn exp(+j k sin(theta) (x_m cos(phi) + y_n sin(phi)))
/// with centered element coordinates x_m, y_n in wavelengths.
Complex array_factor(const ComplexMatrix& weights, const ArrayGeometry& geometry, double theta_deg, double phi_deg);

/// Total normalized power pattern of one beam over a grid, via the array
/// multiplication method: |array factor|^2 times the unit-cell power, peak
/// scaled to exactly 1. Throws std::invalid_argument on an all-zero weight
/// matrix ("no active elements").
PowerPattern array_pattern(const ComplexMatrix& weights, const ArrayGeometry& geometry, const AngularGrid& grid);

}  // namespace arraysynth
