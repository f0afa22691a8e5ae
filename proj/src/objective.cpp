// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace arraysynth {

CostBreakdown single_beam_cost(const std::vector<double>& cut_widths_deg, double sll_db, const BeamSpec& spec,
                               double k1, double k2) {
  if (spec.target_beamwidth_deg <= 0.0) throw std::domain_error("cost: target beamwidth must be positive");
  if (cut_widths_deg.empty()) throw std::invalid_argument("cost: need at least one cut measurement");

  CostBreakdown out;
  double err_sum = 0.0;
  for (double w : cut_widths_deg) err_sum += std::abs(w - spec.target_beamwidth_deg) / spec.target_beamwidth_deg;
  out.z1 = k1 * err_sum;
  out.z2 = sll_db > spec.target_sll_db ? 0.0 : k2 * std::abs(sll_db - spec.target_sll_db) / spec.target_sll_db;
  out.total = out.z1 + out.z2;
  out.beam_bw_error = {err_sum / cut_widths_deg.size()};
  out.beam_sll_db = {sll_db};
  return out;
}

CostBreakdown multibeam_cost(const std::vector<BeamMetrics>& metrics, const std::vector<BeamSpec>& specs,
                             double k1, double k2) {
  if (metrics.size() != specs.size()) throw std::invalid_argument("cost: metrics/specs length mismatch");
  if (metrics.empty()) throw std::invalid_argument("cost: need at least one beam");

  const double b_count = static_cast<double>(metrics.size());
  CostBreakdown out;
  out.beam_bw_error.reserve(metrics.size());
  out.beam_sll_db.reserve(metrics.size());
  for (std::size_t b = 0; b < metrics.size(); ++b) {
    const BeamSpec& spec = specs[b];
    if (spec.target_beamwidth_deg <= 0.0) throw std::domain_error("cost: target beamwidth must be positive");
    const std::vector<double>& widths = metrics[b].cut_widths_deg;
    if (widths.empty()) throw std::invalid_argument("cost: beam without cut measurements");
    double err = 0.0;
    for (double w : widths) err += std::abs(w - spec.target_beamwidth_deg) / spec.target_beamwidth_deg;
    err /= widths.size();
    out.beam_bw_error.push_back(err);
    out.z1 += err;
    const double s = metrics[b].sll_db;
    out.beam_sll_db.push_back(s);
    if (s <= spec.target_sll_db) out.z2 += std::abs(s - spec.target_sll_db) / spec.target_sll_db;
  }
  out.z1 *= k1 / b_count;
  out.z2 *= k2 / b_count;
  out.total = out.z1 + out.z2;
  return out;
}

FeasibilityReport check_constraints(const MaskSet& masks, const ConstraintSet& constraints) {
  if (masks.empty()) throw std::invalid_argument("check_constraints: empty mask set");
  const int rows = static_cast<int>(masks[0].rows());
  const int cols = static_cast<int>(masks[0].cols());

  FeasibilityReport report;
  report.activation_counts = Eigen::MatrixXi::Zero(rows, cols);
  for (const Mask& m : masks) report.activation_counts += m;

  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (report.activation_counts(i, j) > constraints.max_activations(i, j)) report.violations.emplace_back(i, j);
  report.activation_ok = report.violations.empty();

  report.total_power_w = constraints.element_power_w * report.activation_counts.sum();
  report.power_ok = report.total_power_w <= constraints.total_power_w + 1e-12;
  report.feasible = report.activation_ok && report.power_ok;
  return report;
}

}  // namespace arraysynth
