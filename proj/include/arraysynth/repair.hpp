// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/objective.hpp"
#include "arraysynth/types.hpp"

#include <stdexcept>

namespace arraysynth {

/// Thrown when no repair can satisfy the activation/power constraints.
/// The CLI maps this onto exit code 3.
struct ConstraintsUnsatisfiable : std::runtime_error {
  ConstraintsUnsatisfiable() : std::runtime_error("constraints unsatisfiable") {}
};

/// Deterministically edits a chromosome in place until it satisfies the
/// constraint set:
///   0. every beam keeps at least one active element (an all-off beam gets
///      the free element closest to the array center switched on);
///   1. while an element exceeds its activation cap, the beam with the most
///      active elements among its users hands the activation over to the
///      nearest free element with spare budget (ties: smaller lattice
///      distance, then smaller row, then smaller column);
///   2. while total power exceeds the budget, the beam with the most
///      activations switches off its element farthest from the beam's mask
///      centroid (never its last one).
/// Throws ConstraintsUnsatisfiable when no compliant edit exists.
void repair_activation(MaskSet& masks, const ConstraintSet& constraints);

}  // namespace arraysynth
