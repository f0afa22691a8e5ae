// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace arraysynth {

/// Bessel function of the first kind, order 1.
///
/// Ascending power series below |x| = 12, Hankel asymptotic expansion beyond.
/// The split sits where both branches hold ~1e-12 relative accuracy in double
/// precision; at the classical split of 8 the asymptotic tail bottoms out
/// near 3e-8, which misses the 1e-10 target.
double bessel_j1(double x);

/// J1(x)/x as an entire function: value 1/2 at x = 0, no division at the
/// removable singularity. This is the radial envelope of the unit-cell field.
double bessel_j1_over_x(double x);

}  // namespace arraysynth
