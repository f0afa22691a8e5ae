// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/pattern_metrics.hpp"
#include "arraysynth/types.hpp"

#include <utility>
#include <vector>

namespace arraysynth {

/// Activation-count and total-power budgets for a multi-beam weight tensor.
struct ConstraintSet {
  double total_power_w = 10.0;       // p_max
  double element_power_w = 0.0;      // p_e, watts per activation instance
  Eigen::MatrixXi max_activations;   // P_max, per-element cap on sum_b |W^b|^2

  /// Uniform per-element cap. `limit` <= 0 means unlimited (cap = beams, the
  /// count can never exceed it anyway).
  static ConstraintSet uniform(int rows, int cols, int limit, int beams, double total_power_w,
                               double element_power_w) {
    ConstraintSet c;
    c.total_power_w = total_power_w;
    c.element_power_w = element_power_w;
    c.max_activations = Eigen::MatrixXi::Constant(rows, cols, limit > 0 ? limit : beams);
    return c;
  }
};

/// Cost value with its two terms and the per-beam measurements behind them.
struct CostBreakdown {
  double total = 0.0;
  double z1 = 0.0;                      // beamwidth term
  double z2 = 0.0;                      // side-lobe term
  std::vector<double> beam_bw_error;    // mean relative width error per beam
  std::vector<double> beam_sll_db;      // measured suppression per beam
  bool feasible = true;
};

/// Single-beam cost, un-averaged form:
///   Z1 = k1 * sum_r |w_r - w_o| / w_o
///   Z2 = 0 if SLL_c > SLL_o, else k2 * |SLL_c - SLL_o| / SLL_o
CostBreakdown single_beam_cost(const std::vector<double>& cut_widths_deg, double sll_db, const BeamSpec& spec,
                               double k1 = 1.0, double k2 = 1.0);

/// Multi-beam cost: Z1 averages the relative width error over cuts then over
/// beams; Z2 averages the side-lobe shortfall over beams, each beam
/// contributing zero once its suppression exceeds the target.
CostBreakdown multibeam_cost(const std::vector<BeamMetrics>& metrics, const std::vector<BeamSpec>& specs,
                             double k1 = 1.0, double k2 = 1.0);

/// Feasibility of a mask set against a ConstraintSet. Infeasibility is a
/// report, not an error.
struct FeasibilityReport {
  bool feasible = true;
  bool activation_ok = true;
  bool power_ok = true;
  Eigen::MatrixXi activation_counts;              // A = sum_b mask_b
  std::vector<std::pair<int, int>> violations;    // elements with A > P_max
  double total_power_w = 0.0;
};

FeasibilityReport check_constraints(const MaskSet& masks, const ConstraintSet& constraints);

}  // namespace arraysynth
