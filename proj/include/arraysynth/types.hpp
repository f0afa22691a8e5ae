// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace arraysynth {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kSpeedOfLight = 299792458.0;

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Binary activation mask of one beam (entries 0 or 1), rows x cols.
using Mask = Eigen::MatrixXi;
/// One mask per beam; a GA chromosome owns one MaskSet.
using MaskSet = std::vector<Mask>;

/// Planar lattice of radiating elements. Spacings and the unit-cell radius
/// are expressed in wavelengths, so phase terms reduce to 2*pi*(distance_wl).
struct ArrayGeometry {
  int rows = 16;                    // M, elements along x
  int cols = 16;                    // N, elements along y
  double spacing_x_wl = 0.6;        // d_x
  double spacing_y_wl = 0.6;        // d_y
  double aperture_radius_wl = 0.3;  // unit-cell radius a
  double wavelength_m = kSpeedOfLight / 28e9;

  void validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("array geometry: need at least 1x1 elements");
    if (spacing_x_wl <= 0.0 || spacing_y_wl <= 0.0)
      throw std::invalid_argument("array geometry: spacings must be positive");
    if (aperture_radius_wl <= 0.0) throw std::invalid_argument("array geometry: aperture radius must be positive");
  }

  // Element coordinates, centered so that symmetric masks produce a real
  // broadside array factor. Metrics are invariant to this choice.
  double element_x_wl(int m) const { return (m - 0.5 * (rows - 1)) * spacing_x_wl; }
  double element_y_wl(int n) const { return (n - 0.5 * (cols - 1)) * spacing_y_wl; }

  int element_count() const { return rows * cols; }
};

/// Uniformly sampled (theta, phi) grid in degrees; values stored row-major
/// theta x phi (linear index p = i_theta * n_phi + j_phi).
struct AngularGrid {
  double theta_start_deg = 0.0;
  double theta_step_deg = 0.1;
  int n_theta = 901;
  double phi_start_deg = 0.0;
  double phi_step_deg = 1.0;
  int n_phi = 360;

  double theta_deg(int i) const { return theta_start_deg + i * theta_step_deg; }
  double phi_deg(int j) const { return phi_start_deg + j * phi_step_deg; }
  double theta_max_deg() const { return theta_deg(n_theta - 1); }
  int point_count() const { return n_theta * n_phi; }

  /// True when the phi samples tile the full circle (wrap-around neighbors).
  bool full_circle_phi() const { return std::abs(n_phi * phi_step_deg - 360.0) < 1e-9; }

  void validate() const {
    if (n_theta < 2 || n_phi < 1) throw std::invalid_argument("angular grid: too few samples");
    if (theta_step_deg <= 0.0 || phi_step_deg <= 0.0) throw std::invalid_argument("angular grid: steps must be positive");
    if (theta_start_deg < 0.0 || theta_max_deg() > 90.0 + 1e-9)
      throw std::invalid_argument("angular grid: theta must lie in [0, 90] degrees");
  }

  /// Forward hemisphere: theta [0, 90], phi [0, 360).
  static AngularGrid hemisphere(double theta_step = 0.1, double phi_step = 1.0) {
    AngularGrid g;
    g.theta_step_deg = theta_step;
    g.n_theta = static_cast<int>(std::lround(90.0 / theta_step)) + 1;
    g.phi_step_deg = phi_step;
    g.n_phi = static_cast<int>(std::lround(360.0 / phi_step));
    return g;
  }

  /// Spherical cap theta [0, theta_max], phi [0, 360).
  static AngularGrid cap(double theta_max, double theta_step, double phi_step) {
    AngularGrid g = hemisphere(theta_step, phi_step);
    g.n_theta = static_cast<int>(std::lround(theta_max / theta_step)) + 1;
    return g;
  }
};

/// Normalized radiated power sampled on an AngularGrid: max(values) == 1.
struct PowerPattern {
  AngularGrid grid;
  Eigen::MatrixXd values;  // (n_theta, n_phi), linear power in [0, 1]
  int peak_i = 0;
  int peak_j = 0;
  double peak_theta_deg = 0.0;
  double peak_phi_deg = 0.0;
};

/// Per-beam synthesis targets.
struct BeamSpec {
  double theta0_deg = 0.0;  // scan direction
  double phi0_deg = 0.0;
  double target_beamwidth_deg = 5.0;  // desired -3 dB width
  double target_sll_db = 16.0;        // desired suppression (positive dB)
  int subband = -1;                   // frequency sub-band color, assigned by graph coloring
};

/// Side lobes are only counted inside this cone about boresight.
struct FieldOfView {
  double max_theta_deg = 90.0;
};

/// Per-beam complex excitation: binary amplitude times steering phase.
struct WeightTensor {
  std::vector<ComplexMatrix> beams;

  int beam_count() const { return static_cast<int>(beams.size()); }
};

}  // namespace arraysynth
