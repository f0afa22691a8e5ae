// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/bessel.hpp"

#include <cmath>

namespace arraysynth {
namespace {

constexpr double kSeriesLimit = 12.0;

// sum_k (-1)^k (x^2/4)^k / (k! (k+1)!), so that J1(x) = (x/2) * series
// and J1(x)/x = series / 2. Converges for all x; cancellation keeps it
// accurate to ~1e-12 relative for |x| < 12.
double j1_series_core(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 60; ++k) {
    term *= -t / ((k + 1.0) * (k + 2.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel expansion, Abramowitz & Stegun 9.2.5-9.2.10 with mu = 4nu^2 = 4:
//   J1(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),  chi = x - 3pi/4,
// truncated at the smallest term.
double j1_asymptotic(double x) {
  const double mu = 4.0;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;  // divergent tail reached
    prev = std::abs(term);
    const int phase = k % 4;
    if (phase == 1)
      q += term;
    else if (phase == 2)
      p -= term;
    else if (phase == 3)
      q -= term;
    else
      p += term;
    if (prev < 1e-18) break;
  }
  const double chi = x - 0.75 * 3.14159265358979323846;
  return std::sqrt(2.0 / (3.14159265358979323846 * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  const double ax = std::abs(x);
  double value;
  if (ax < kSeriesLimit)
    value = 0.5 * ax * j1_series_core(ax);
  else
    value = j1_asymptotic(ax);
  return x < 0.0 ? -value : value;  // odd function
}

double bessel_j1_over_x(double x) {
  const double ax = std::abs(x);
  if (ax < kSeriesLimit) return 0.5 * j1_series_core(ax);  // even in x
  return bessel_j1(ax) / ax;
}

}  // namespace arraysynth
