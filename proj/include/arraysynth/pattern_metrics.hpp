// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/types.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arraysynth {

/// Everything the cost function and the report tables need for one beam.
struct BeamMetrics {
  std::vector<double> cut_widths_deg;  // one -3 dB width per cut plane
  double beamwidth_deg = 0.0;          // mean of the cut widths
  double sll_db = 0.0;                 // suppression, positive = below main lobe
  double directivity_dbi = std::numeric_limits<double>::quiet_NaN();
  double peak_theta_deg = 0.0;
  double peak_phi_deg = 0.0;
  int active_elements = 0;
};

namespace detail {

// The metric cores are templated on the value-matrix type so that the float
// batch evaluator and the double PowerPattern front end share one
// implementation. `values` needs only (i, j) element access; it may be
// unnormalized, with `peak_value` carrying the reference maximum.

template <class M>
void find_peak(const M& values, const AngularGrid& grid, int& peak_i, int& peak_j) {
  double peak = -1.0;
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      if (static_cast<double>(values(i, j)) > peak) {
        peak = static_cast<double>(values(i, j));
        peak_i = i;
        peak_j = j;
      }
}

// Flood fill downhill from the peak: the main lobe is every cell reachable
// through non-increasing values (tiny relative slack for plateaus). The fill
// stops where values rise again, i.e. at the first null ridge.
template <class M>
void main_lobe_region(const M& values, const AngularGrid& grid, int peak_i, int peak_j,
                      std::vector<std::uint8_t>& region, std::vector<int>& stack) {
  const int nt = grid.n_theta;
  const int np = grid.n_phi;
  const bool wrap = grid.full_circle_phi();
  region.assign(static_cast<std::size_t>(nt) * np, 0);
  stack.clear();
  const auto push = [&](int i, int j, double limit) {
    const int p = i * np + j;
    if (!region[p] && static_cast<double>(values(i, j)) <= limit) {
      region[p] = 1;
      stack.push_back(p);
    }
  };
  region[peak_i * np + peak_j] = 1;
  stack.push_back(peak_i * np + peak_j);
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    const int i = p / np;
    const int j = p % np;
    const double limit = static_cast<double>(values(i, j)) * (1.0 + 1e-12);
    if (i > 0) push(i - 1, j, limit);
    if (i + 1 < nt) push(i + 1, j, limit);
    if (j > 0)
      push(i, j - 1, limit);
    else if (wrap)
      push(i, np - 1, limit);
    if (j + 1 < np)
      push(i, j + 1, limit);
    else if (wrap)
      push(i, 0, limit);
  }
}

// Side-lobe suppression in positive dB: the strongest sample outside the
// main-lobe region and inside the field-of-view cone, relative to the peak.
// Ties go to the smallest theta, then the smallest phi. Returns +inf when
// every out-of-lobe sample is zero, NaN when the FoV cone holds no sample
// outside the main lobe at all (the public wrapper turns that into an error;
// the optimizer treats it as unbounded suppression).
template <class M>
double sll_from_values(const M& values, const AngularGrid& grid, int peak_i, int peak_j, double peak_value,
                       const FieldOfView& fov, std::vector<std::uint8_t>& region, std::vector<int>& stack) {
  main_lobe_region(values, grid, peak_i, peak_j, region, stack);
  const int np = grid.n_phi;
  double best = -1.0;
  bool any = false;
  for (int i = 0; i < grid.n_theta; ++i) {
    if (grid.theta_deg(i) > fov.max_theta_deg + 1e-9) break;
    for (int j = 0; j < np; ++j) {
      if (region[i * np + j]) continue;
      any = true;
      const double v = static_cast<double>(values(i, j));
      if (v > best) best = v;
    }
  }
  if (!any) return std::numeric_limits<double>::quiet_NaN();
  if (best <= 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(best / peak_value);
}

// Bilinear interpolation in (theta, phi), linear in power. phi wraps on
// full-circle grids. Returns NaN when theta leaves the grid.
template <class M>
double sample_bilinear(const M& values, const AngularGrid& grid, double theta_deg, double phi_deg) {
  const double ti = (theta_deg - grid.theta_start_deg) / grid.theta_step_deg;
  if (ti < -1e-9 || ti > grid.n_theta - 1 + 1e-9) return std::numeric_limits<double>::quiet_NaN();
  int i0 = static_cast<int>(std::floor(ti));
  i0 = std::max(0, std::min(i0, grid.n_theta - 2));
  const double fi = std::max(0.0, std::min(ti - i0, 1.0));

  double pj = (phi_deg - grid.phi_start_deg) / grid.phi_step_deg;
  int j0, j1;
  double fj;
  if (grid.full_circle_phi()) {
    pj = std::fmod(pj, static_cast<double>(grid.n_phi));
    if (pj < 0.0) pj += grid.n_phi;
    j0 = static_cast<int>(std::floor(pj)) % grid.n_phi;
    j1 = (j0 + 1) % grid.n_phi;
    fj = pj - std::floor(pj);
  } else {
    if (pj < -1e-9 || pj > grid.n_phi - 1 + 1e-9) return std::numeric_limits<double>::quiet_NaN();
    j0 = std::max(0, std::min(static_cast<int>(std::floor(pj)), grid.n_phi - 2));
    j1 = j0 + 1;
    fj = std::max(0.0, std::min(pj - j0, 1.0));
  }
  const double a = static_cast<double>(values(i0, j0)) * (1.0 - fj) + static_cast<double>(values(i0, j1)) * fj;
  const double b = static_cast<double>(values(i0 + 1, j0)) * (1.0 - fj) + static_cast<double>(values(i0 + 1, j1)) * fj;
  return a * (1.0 - fi) + b * fi;
}

inline double db10(double linear) { return linear > 0.0 ? 10.0 * std::log10(linear) : -400.0; }

// -3 dB widths along `cuts` great-circle planes through the peak direction,
// at offsets r * 180/cuts. Each half-width comes from walking outward in
// theta-step increments until the power first crosses half the peak, with the
// crossing located by linear interpolation in dB between adjacent samples.
template <class M>
std::vector<double> cut_widths_from_values(const M& values, const AngularGrid& grid, int peak_i, int peak_j,
                                           double peak_value, int cuts) {
  if (cuts < 1) throw std::invalid_argument("beamwidth: need at least one cut");
  const double tp = grid.theta_deg(peak_i) * kDegToRad;
  const double pp = grid.phi_deg(peak_j) * kDegToRad;
  const Eigen::Vector3d e(std::sin(tp) * std::cos(pp), std::sin(tp) * std::sin(pp), std::cos(tp));
  const Eigen::Vector3d t1(std::cos(tp) * std::cos(pp), std::cos(tp) * std::sin(pp), -std::sin(tp));
  const Eigen::Vector3d t2(-std::sin(pp), std::cos(pp), 0.0);

  const double step = grid.theta_step_deg;
  const double half_db = db10(0.5);
  std::vector<double> widths(cuts);
  for (int r = 0; r < cuts; ++r) {
    const double delta = r * kPi / cuts;
    const Eigen::Vector3d w = t1 * std::cos(delta) + t2 * std::sin(delta);
    double half[2];
    for (int s = 0; s < 2; ++s) {
      const double sign = s == 0 ? 1.0 : -1.0;
      double prev_db = 0.0;  // peak sample, relative
      bool found = false;
      const int max_k = static_cast<int>(90.0 / step) + 1;
      for (int k = 1; k <= max_k; ++k) {
        const double t = sign * k * step * kDegToRad;
        const Eigen::Vector3d d = e * std::cos(t) + w * std::sin(t);
        const double theta = std::acos(std::max(-1.0, std::min(1.0, d.z()))) * kRadToDeg;
        const double phi = std::atan2(d.y(), d.x()) * kRadToDeg;
        const double v = sample_bilinear(values, grid, theta, phi);
        if (std::isnan(v)) throw std::runtime_error("beamwidth: main lobe wider than grid");
        const double v_db = db10(v / peak_value);
        if (v_db <= half_db) {
          const double frac = (prev_db - half_db) / (prev_db - v_db);
          half[s] = (k - 1 + frac) * step;
          found = true;
          break;
        }
        prev_db = v_db;
      }
      if (!found)
        throw std::runtime_error("beamwidth: fewer than 2 half-power crossings in cut " + std::to_string(r));
    }
    widths[r] = half[0] + half[1];
  }
  return widths;
}

}  // namespace detail

/// Per-cut -3 dB beamwidths of a normalized pattern (degrees).
std::vector<double> cut_beamwidths(const PowerPattern& pattern, int cuts);

/// Mean -3 dB beamwidth over `cuts` pattern cuts through the peak (degrees).
double beamwidth(const PowerPattern& pattern, int cuts = 4);

/// Side-lobe suppression in dB (positive = side lobe below main lobe). The
/// paper's Eq. ratio convention would be negative; tables and targets quote
/// the positive magnitude, which is what this returns.
double sll(const PowerPattern& pattern, const FieldOfView& fov = {});

/// Directivity 4*pi*U_max / integral(U dOmega), trapezoidal quadrature, in
/// dBi. Requires at least 64 theta samples.
double directivity_dbi(const PowerPattern& pattern);

/// EIRP in dBW: antenna gain (dBi) plus transmit power (dBW).
double eirp_dbw(double gain_dbi, double tx_power_dbw);

}  // namespace arraysynth
