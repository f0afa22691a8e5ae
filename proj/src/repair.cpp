// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/repair.hpp"

#include <cmath>
#include <limits>

namespace arraysynth {
namespace {

// Squared lattice distance; all tie-breaking below is (distance, row, col).
inline long dist2(int r0, int c0, int r1, int c1) {
  const long dr = r1 - r0;
  const long dc = c1 - c0;
  return dr * dr + dc * dc;
}

// Beam with the largest active-element count among those activating (r, c);
// ties go to the smaller beam index. Returns -1 if none.
int fattest_user(const MaskSet& masks, int r, int c) {
  int best = -1;
  long best_count = -1;
  for (std::size_t b = 0; b < masks.size(); ++b) {
    if (masks[b](r, c) == 0) continue;
    const long count = masks[b].sum();
    if (count > best_count) {
      best_count = count;
      best = static_cast<int>(b);
    }
  }
  return best;
}

}  // namespace

void repair_activation(MaskSet& masks, const ConstraintSet& constraints) {
  if (masks.empty()) return;
  const int rows = static_cast<int>(masks[0].rows());
  const int cols = static_cast<int>(masks[0].cols());
  const Eigen::MatrixXi& cap = constraints.max_activations;

  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(rows, cols);
  for (const Mask& m : masks) counts += m;

  // Step 0: no beam may go dark. Turn on the free element with spare budget
  // nearest to the array center.
  const double center_r = 0.5 * (rows - 1);
  const double center_c = 0.5 * (cols - 1);
  for (Mask& m : masks) {
    if (m.sum() > 0) continue;
    int br = -1, bc = -1;
    double best_d = std::numeric_limits<double>::max();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (counts(r, c) >= cap(r, c)) continue;
        const double d = (r - center_r) * (r - center_r) + (c - center_c) * (c - center_c);
        if (d < best_d) {
          best_d = d;
          br = r;
          bc = c;
        }
      }
    if (br < 0) throw ConstraintsUnsatisfiable();
    m(br, bc) = 1;
    ++counts(br, bc);
  }

  // Step 1: activation-limit repair. Each handover reduces the total excess
  // by one and never creates a new violation, so this terminates.
  bool moved = true;
  while (moved) {
    moved = false;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        while (counts(r, c) > cap(r, c)) {
          const int b = fattest_user(masks, r, c);
          int br = -1, bc = -1;
          long best_d = std::numeric_limits<long>::max();
          for (int r2 = 0; r2 < rows; ++r2)
            for (int c2 = 0; c2 < cols; ++c2) {
              if (masks[b](r2, c2) != 0 || counts(r2, c2) >= cap(r2, c2)) continue;
              const long d = dist2(r, c, r2, c2);
              if (d < best_d) {
                best_d = d;
                br = r2;
                bc = c2;
              }
            }
          if (br < 0) throw ConstraintsUnsatisfiable();
          masks[b](r, c) = 0;
          --counts(r, c);
          masks[b](br, bc) = 1;
          ++counts(br, bc);
          moved = true;
        }
  }

  // Step 2: power repair. Thin the beam with the most activations from its
  // rim inward (farthest from the mask centroid first).
  if (constraints.element_power_w > 0.0) {
    while (constraints.element_power_w * counts.sum() > constraints.total_power_w + 1e-12) {
      int b = -1;
      long best_count = 1;  // beams must keep one element
      for (std::size_t k = 0; k < masks.size(); ++k) {
        const long count = masks[k].sum();
        if (count > best_count) {
          best_count = count;
          b = static_cast<int>(k);
        }
      }
      if (b < 0) throw ConstraintsUnsatisfiable();
      double cr = 0.0, cc = 0.0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          if (masks[b](r, c) != 0) {
            cr += r;
            cc += c;
          }
      cr /= best_count;
      cc /= best_count;
      int br = -1, bc = -1;
      double best_d = -1.0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          if (masks[b](r, c) == 0) continue;
          const double d = (r - cr) * (r - cr) + (c - cc) * (c - cc);
          if (d > best_d) {
            best_d = d;
            br = r;
            bc = c;
          }
        }
      masks[b](br, bc) = 0;
      --counts(br, bc);
    }
  }
}

}  // namespace arraysynth
