// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/objective.hpp"

#include "arraysynth/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace arraysynth;

namespace {

BeamMetrics metrics_of(std::vector<double> widths, double sll_db) {
  BeamMetrics m;
  m.cut_widths_deg = std::move(widths);
  m.sll_db = sll_db;
  return m;
}

BeamSpec spec_of(double bw, double sll) {
  BeamSpec s;
  s.target_beamwidth_deg = bw;
  s.target_sll_db = sll;
  return s;
}

}  // namespace

TEST_CASE("single-beam cost: exact beamwidths and satisfied SLL give zero") {
  const CostBreakdown c = single_beam_cost({4.7, 4.7, 4.7, 4.7}, 17.0, spec_of(4.7, 16.0));
  CHECK(c.total == 0.0);
  CHECK(c.z1 == 0.0);
  CHECK(c.z2 == 0.0);
}

TEST_CASE("single-beam cost: hand-computed terms") {
  // one cut: |5.0 - 4.7| / 4.7, SLL branch satisfied
  const CostBreakdown a = single_beam_cost({5.0}, 20.0, spec_of(4.7, 16.0));
  CHECK(a.z1 == doctest::Approx(0.3 / 4.7).epsilon(1e-12));
  CHECK(a.z2 == 0.0);
  CHECK(a.total == doctest::Approx(0.3 / 4.7).epsilon(1e-12));

  // SLL 15 against target 16: |15 - 16| / 16
  const CostBreakdown b = single_beam_cost({4.7}, 15.0, spec_of(4.7, 16.0));
  CHECK(b.z2 == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

  // Z1 is the un-averaged sum over cuts, scaled by k1
  const CostBreakdown c = single_beam_cost({5.0, 5.0}, 20.0, spec_of(4.7, 16.0), 2.0);
  CHECK(c.z1 == doctest::Approx(2.0 * 2.0 * 0.3 / 4.7).epsilon(1e-12));

  CHECK_THROWS_AS(single_beam_cost({5.0}, 20.0, spec_of(-1.0, 16.0)), std::domain_error);
}

TEST_CASE("z2 switches discontinuously at the threshold") {
  const BeamSpec s = spec_of(4.7, 16.0);
  CHECK(single_beam_cost({4.7}, 16.0 + 1e-9, s).z2 == 0.0);
  CHECK(single_beam_cost({4.7}, 16.0, s).z2 == 0.0);  // branch taken at equality is |0|/16 = 0
  const double below = single_beam_cost({4.7}, 16.0 - 1e-3, s).z2;
  CHECK(below == doctest::Approx(1e-3 / 16.0).epsilon(1e-6));
  // multibeam side of the same contract
  const std::vector<BeamSpec> specs{s};
  CHECK(multibeam_cost({metrics_of({4.7}, 16.001)}, specs).z2 == 0.0);
  CHECK(multibeam_cost({metrics_of({4.7}, 15.999)}, specs).z2 ==
        doctest::Approx(0.001 / 16.0).epsilon(1e-6));
}

TEST_CASE("multibeam cost averages over cuts and beams") {
  const std::vector<BeamSpec> specs{spec_of(4.7, 16.0), spec_of(5.5, 16.0)};

  // one perfect beam, one contributing 0.10 -> total 0.05
  const std::vector<BeamMetrics> ms{metrics_of({4.7, 4.7}, 18.0), metrics_of({5.5 * 1.2, 5.5 * 1.2}, 18.0)};
  const CostBreakdown c = multibeam_cost(ms, specs);
  CHECK(c.total == doctest::Approx(0.10).epsilon(1e-12));

  // B = 1 reduces to the single-beam form divided by the cut count
  const std::vector<BeamSpec> one{spec_of(4.7, 16.0)};
  const std::vector<double> widths{5.0, 4.8, 4.6};
  const CostBreakdown multi = multibeam_cost({metrics_of(widths, 15.0)}, one);
  const CostBreakdown single = single_beam_cost(widths, 15.0, one[0]);
  CHECK(multi.z1 == doctest::Approx(single.z1 / widths.size()).epsilon(1e-12));
  CHECK(multi.z2 == doctest::Approx(single.z2).epsilon(1e-12));

  // seven beams all on target -> exactly zero
  std::vector<BeamSpec> seven;
  std::vector<BeamMetrics> seven_m;
  for (int b = 0; b < 7; ++b) {
    seven.push_back(spec_of(4.0 + 0.5 * b, 16.0));
    seven_m.push_back(metrics_of({4.0 + 0.5 * b, 4.0 + 0.5 * b}, 17.0));
  }
  CHECK(multibeam_cost(seven_m, seven).total == 0.0);

  CHECK_THROWS_AS(multibeam_cost(seven_m, specs), std::invalid_argument);
}

TEST_CASE("check_constraints counts activations and reports violations") {
  const int beams = 7;
  ConstraintSet cs = ConstraintSet::uniform(4, 4, 5, beams, 10.0, 0.1);

  MaskSet all_off(beams, Mask::Zero(4, 4));
  const FeasibilityReport empty = check_constraints(all_off, cs);
  CHECK(empty.feasible);
  CHECK(empty.activation_counts.sum() == 0);

  MaskSet stacked(beams, Mask::Zero(4, 4));
  for (Mask& m : stacked) m(0, 0) = 1;
  const FeasibilityReport viol = check_constraints(stacked, cs);
  CHECK_FALSE(viol.feasible);
  CHECK(viol.activation_counts(0, 0) == 7);
  REQUIRE(viol.violations.size() == 1);
  CHECK(viol.violations[0] == std::pair<int, int>(0, 0));
  CHECK(viol.total_power_w == doctest::Approx(0.7));
}

TEST_CASE("deactivating an element never makes a feasible set infeasible") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int beams = 3;
    ConstraintSet cs = ConstraintSet::uniform(5, 5, 2, beams, 100.0, 0.5);
    MaskSet masks(beams, Mask::Zero(5, 5));
    for (Mask& m : masks)
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = rng.bernoulli(0.4) ? 1 : 0;
    if (!check_constraints(masks, cs).feasible) continue;
    const int b = rng.below(beams), i = rng.below(5), j = rng.below(5);
    masks[b](i, j) = 0;
    CHECK(check_constraints(masks, cs).feasible);
    // and the count matrix stays bounded by the beam count
    CHECK(check_constraints(masks, cs).activation_counts.maxCoeff() <= beams);
  }
}
