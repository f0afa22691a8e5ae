// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/subbands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arraysynth {
namespace {

Eigen::Vector3d direction(const BeamSpec& spec) {
  const double t = spec.theta0_deg * kDegToRad;
  const double p = spec.phi0_deg * kDegToRad;
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

}  // namespace

std::vector<int> assign_subbands(const std::vector<BeamSpec>& specs, double guard_deg) {
  const int n = static_cast<int>(specs.size());
  std::vector<Eigen::Vector3d> dirs(n);
  for (int i = 0; i < n; ++i) dirs[i] = direction(specs[i]);

  std::vector<std::vector<int>> adjacent(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double sep = std::acos(std::max(-1.0, std::min(1.0, dirs[i].dot(dirs[j])))) * kRadToDeg;
      const double threshold =
          0.5 * (specs[i].target_beamwidth_deg + specs[j].target_beamwidth_deg) + guard_deg;
      if (sep < threshold) {
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
      }
    }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (adjacent[a].size() != adjacent[b].size()) return adjacent[a].size() > adjacent[b].size();
    return a < b;
  });

  std::vector<int> colors(n, -1);
  std::vector<char> used;
  for (int v : order) {
    used.assign(n, 0);
    for (int w : adjacent[v])
      if (colors[w] >= 0) used[colors[w]] = 1;
    int c = 0;
    while (used[c]) ++c;
    colors[v] = c;
  }
  return colors;
}

}  // namespace arraysynth
