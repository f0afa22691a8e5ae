// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/array_pattern.hpp"

#include "arraysynth/unit_cell.hpp"

#include <cmath>
#include <stdexcept>

namespace arraysynth {

Complex array_factor(const ComplexMatrix& weights, const ArrayGeometry& geometry, double theta_deg, double phi_deg) {
  const double st = std::sin(theta_deg * kDegToRad);
  const double alpha = kTwoPi * geometry.spacing_x_wl * st * std::cos(phi_deg * kDegToRad);
  const double beta = kTwoPi * geometry.spacing_y_wl * st * std::sin(phi_deg * kDegToRad);

  const int rows = geometry.rows;
  const int cols = geometry.cols;
  Eigen::VectorXcd u(rows), v(cols);
  const Complex du(std::cos(alpha), std::sin(alpha));
  const Complex dv(std::cos(beta), std::sin(beta));
  const double x0 = -0.5 * (rows - 1) * alpha;
  const double y0 = -0.5 * (cols - 1) * beta;
  u(0) = Complex(std::cos(x0), std::sin(x0));
  for (int m = 1; m < rows; ++m) u(m) = u(m - 1) * du;
  v(0) = Complex(std::cos(y0), std::sin(y0));
  for (int n = 1; n < cols; ++n) v(n) = v(n - 1) * dv;

  return u.transpose() * (weights * v);
}

PowerPattern array_pattern(const ComplexMatrix& weights, const ArrayGeometry& geometry, const AngularGrid& grid) {
  geometry.validate();
  grid.validate();
  if (weights.rows() != geometry.rows || weights.cols() != geometry.cols)
    throw std::invalid_argument("array_pattern: weight matrix shape does not match geometry");
  if (weights.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("array_pattern: no active elements");

  PowerPattern pattern;
  pattern.grid = grid;
  pattern.values.resize(grid.n_theta, grid.n_phi);

  for (int i = 0; i < grid.n_theta; ++i) {
    const double theta = grid.theta_deg(i);
    const double ucp = unit_cell_power(theta, 0.0, geometry);
    for (int j = 0; j < grid.n_phi; ++j) {
      const Complex af = array_factor(weights, geometry, theta, grid.phi_deg(j));
      pattern.values(i, j) = std::norm(af) * ucp;
    }
  }

  // Sequential scan keeps the peak choice deterministic: smallest theta,
  // then smallest phi, wins ties.
  double peak = -1.0;
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      if (pattern.values(i, j) > peak) {
        peak = pattern.values(i, j);
        pattern.peak_i = i;
        pattern.peak_j = j;
      }
  pattern.values /= peak;
  pattern.values(pattern.peak_i, pattern.peak_j) = 1.0;
  pattern.peak_theta_deg = grid.theta_deg(pattern.peak_i);
  pattern.peak_phi_deg = grid.phi_deg(pattern.peak_j);
  return pattern;
}

}  // namespace arraysynth
