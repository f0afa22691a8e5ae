// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/pattern_metrics.hpp"
#include "arraysynth/types.hpp"
#include "arraysynth/unit_cell.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace arraysynth {

/// Evaluates many beam patterns on one fixed grid as a single matrix product.
///
/// The direction basis G(p, e) = exp(+j 2 pi sin(theta_p) (x_m cos(phi_p) +
/// y_n sin(phi_p))) with e = m * cols + n is precomputed once; a batch of
/// masked, steered weight columns W then yields all array factors as G * W.
/// The 16x16-class element count makes this GEMM the whole cost of a
/// generation, so the scalar type is a template parameter: float for the
/// optimizer loop, double when bit-level agreement with array_pattern()
/// matters. Metrics reuse the shared cores from pattern_metrics.hpp, so both
/// paths measure identically.
template <typename Scalar>
class BatchPatternEvaluator {
 public:
  using Cplx = std::complex<Scalar>;
  using CplxMatrix = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using ValueMap = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

  BatchPatternEvaluator(const ArrayGeometry& geometry, const AngularGrid& grid, const FieldOfView& fov, int cuts,
                        std::vector<BeamSpec> specs)
      : geometry_(geometry), grid_(grid), fov_(fov), cuts_(cuts), specs_(std::move(specs)) {
    geometry.validate();
    grid.validate();
    const int elements = geometry.element_count();
    const long points = grid.point_count();

    basis_.resize(points, elements);
    unit_cell_.resize(points);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.n_theta; ++i) {
      const double theta = grid_.theta_deg(i);
      const double st = std::sin(theta * kDegToRad);
      const Scalar ucp = static_cast<Scalar>(unit_cell_power(theta, 0.0, geometry_));
      for (int j = 0; j < grid.n_phi; ++j) {
        const long p = static_cast<long>(i) * grid.n_phi + j;
        unit_cell_[p] = ucp;
        const double phi = grid_.phi_deg(j) * kDegToRad;
        const double alpha = kTwoPi * geometry_.spacing_x_wl * st * std::cos(phi);
        const double beta = kTwoPi * geometry_.spacing_y_wl * st * std::sin(phi);
        for (int m = 0; m < geometry_.rows; ++m) {
          const double px = (m - 0.5 * (geometry_.rows - 1)) * alpha;
          for (int n = 0; n < geometry_.cols; ++n) {
            const double ph = px + (n - 0.5 * (geometry_.cols - 1)) * beta;
            basis_(p, m * geometry_.cols + n) = Cplx(static_cast<Scalar>(std::cos(ph)),
                                                     static_cast<Scalar>(std::sin(ph)));
          }
        }
      }
    }

    steering_.resize(specs_.size());
    for (std::size_t b = 0; b < specs_.size(); ++b) {
      steering_[b].resize(elements);
      for (int m = 0; m < geometry_.rows; ++m)
        for (int n = 0; n < geometry_.cols; ++n) {
          const double psi = steering_phase(m, n, specs_[b].theta0_deg, specs_[b].phi0_deg, geometry_);
          steering_[b][m * geometry_.cols + n] =
              Cplx(static_cast<Scalar>(std::cos(psi)), static_cast<Scalar>(std::sin(psi)));
        }
    }
  }

  const AngularGrid& grid() const { return grid_; }
  int beam_count() const { return static_cast<int>(specs_.size()); }

  /// Metrics for every (chromosome, beam) pattern; chromosome order is
  /// preserved, so results are independent of any internal parallelism.
  std::vector<std::vector<BeamMetrics>> evaluate(const std::vector<const MaskSet*>& chromosomes) {
    const int beams = beam_count();
    const int k_total = static_cast<int>(chromosomes.size()) * beams;
    const int elements = geometry_.element_count();
    const long points = grid_.point_count();

    CplxMatrix weights(elements, k_total);
    for (std::size_t q = 0; q < chromosomes.size(); ++q) {
      const MaskSet& masks = *chromosomes[q];
      if (static_cast<int>(masks.size()) != beams)
        throw std::invalid_argument("evaluate: chromosome beam count mismatch");
      for (int b = 0; b < beams; ++b) {
        const long col = static_cast<long>(q) * beams + b;
        for (int m = 0; m < geometry_.rows; ++m)
          for (int n = 0; n < geometry_.cols; ++n) {
            const int e = m * geometry_.cols + n;
            weights(e, col) = masks[b](m, n) != 0 ? steering_[b][e] : Cplx(0, 0);
          }
      }
    }

    power_.resize(points, k_total);
    constexpr long kBlockRows = 49152;
    block_.resize(std::min(kBlockRows, points), k_total);
    for (long r0 = 0; r0 < points; r0 += kBlockRows) {
      const long nb = std::min(kBlockRows, points - r0);
      block_.topRows(nb).noalias() = basis_.middleRows(r0, nb) * weights;
      power_.middleRows(r0, nb) =
          block_.topRows(nb).cwiseAbs2().array().colwise() *
          Eigen::Map<const Eigen::Array<Scalar, Eigen::Dynamic, 1>>(unit_cell_.data() + r0, nb);
    }

    std::vector<std::vector<BeamMetrics>> out(chromosomes.size(), std::vector<BeamMetrics>(beams));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < k_total; ++k) {
      try {
        const ValueMap values(power_.col(k).data(), grid_.n_theta, grid_.n_phi);
        BeamMetrics& metrics = out[k / beams][k % beams];
        int pi = 0, pj = 0;
        detail::find_peak(values, grid_, pi, pj);
        const double peak = static_cast<double>(values(pi, pj));
        if (peak <= 0.0) throw std::runtime_error("evaluate: beam has no active elements");
        std::vector<std::uint8_t> region;
        std::vector<int> stack;
        const double suppression = detail::sll_from_values(values, grid_, pi, pj, peak, fov_, region, stack);
        // a pattern whose FoV holds nothing outside the main lobe is
        // unboundedly suppressed, not an error, for cost purposes
        metrics.sll_db = std::isnan(suppression) ? std::numeric_limits<double>::infinity() : suppression;
        metrics.cut_widths_deg = detail::cut_widths_from_values(values, grid_, pi, pj, peak, cuts_);
        double sum = 0.0;
        for (double w : metrics.cut_widths_deg) sum += w;
        metrics.beamwidth_deg = sum / metrics.cut_widths_deg.size();
        metrics.peak_theta_deg = grid_.theta_deg(pi);
        metrics.peak_phi_deg = grid_.phi_deg(pj);
        metrics.active_elements = (*chromosomes[k / beams])[k % beams].sum();
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
  }

 private:
  ArrayGeometry geometry_;
  AngularGrid grid_;
  FieldOfView fov_;
  int cuts_;
  std::vector<BeamSpec> specs_;
  CplxMatrix basis_;
  std::vector<Scalar> unit_cell_;
  std::vector<std::vector<Cplx>> steering_;
  // scratch reused across generations
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> power_;
  CplxMatrix block_;
};

}  // namespace arraysynth
