// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/types.hpp"

#include <vector>

namespace arraysynth {

/// Frequency sub-band assignment by greedy graph coloring. Two beams
/// interfere when the angular separation of their scan directions is below
/// half the sum of their target beamwidths plus a guard; interfering beams
/// never share a color. Vertices are colored in descending-degree order
/// (ties: lower beam index) with the smallest free color.
std::vector<int> assign_subbands(const std::vector<BeamSpec>& specs, double guard_deg = 1.0);

}  // namespace arraysynth
