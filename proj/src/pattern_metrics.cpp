// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/pattern_metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace arraysynth {

std::vector<double> cut_beamwidths(const PowerPattern& pattern, int cuts) {
  if (pattern.values.minCoeff() > 0.5)
    throw std::runtime_error("beamwidth: main lobe wider than grid");
  return detail::cut_widths_from_values(pattern.values, pattern.grid, pattern.peak_i, pattern.peak_j, 1.0, cuts);
}

double beamwidth(const PowerPattern& pattern, int cuts) {
  const std::vector<double> widths = cut_beamwidths(pattern, cuts);
  double sum = 0.0;
  for (double w : widths) sum += w;
  return sum / widths.size();
}

double sll(const PowerPattern& pattern, const FieldOfView& fov) {
  if (fov.max_theta_deg <= 0.0 || fov.max_theta_deg > 90.0)
    throw std::invalid_argument("sll: field of view must lie in (0, 90] degrees");
  std::vector<std::uint8_t> region;
  std::vector<int> stack;
  const double suppression = detail::sll_from_values(pattern.values, pattern.grid, pattern.peak_i,
                                                     pattern.peak_j, 1.0, fov, region, stack);
  if (std::isnan(suppression)) throw std::runtime_error("sll: no side lobe in field of view");
  return suppression;
}

double directivity_dbi(const PowerPattern& pattern) {
  const AngularGrid& grid = pattern.grid;
  if (grid.n_theta < 64) throw std::invalid_argument("directivity: grid too coarse (need >= 64 theta samples)");

  const double dt = grid.theta_step_deg * kDegToRad;
  const double dp = grid.phi_step_deg * kDegToRad;
  const bool wrap = grid.full_circle_phi();
  double integral = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double wt = (i == 0 || i == grid.n_theta - 1) ? 0.5 : 1.0;
    const double s = std::sin(grid.theta_deg(i) * kDegToRad);
    double row = 0.0;
    for (int j = 0; j < grid.n_phi; ++j) {
      const double wp = (!wrap && (j == 0 || j == grid.n_phi - 1)) ? 0.5 : 1.0;
      row += wp * pattern.values(i, j);
    }
    integral += wt * s * row;
  }
  integral *= dt * dp;
  return 10.0 * std::log10(4.0 * kPi / integral);
}

double eirp_dbw(double gain_dbi, double tx_power_dbw) { return gain_dbi + tx_power_dbw; }

}  // namespace arraysynth
