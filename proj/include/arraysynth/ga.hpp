// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/batch_evaluator.hpp"
#include "arraysynth/objective.hpp"
#include "arraysynth/repair.hpp"
#include "arraysynth/rng.hpp"
#include "arraysynth/unit_cell.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace arraysynth {

struct GaConfig {
  int population_size = 64;  // C, even
  int max_generations = 500;
  double f_min = 1e-3;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // < 0 resolves to 1/(rows*cols)
  int elitism = 2;
  std::uint64_t seed = 1;
  double k1 = 1.0;
  double k2 = 1.0;
  int stagnation_window = 100;
  double stagnation_min_improvement = 1e-6;

  void validate() const {
    if (population_size < 4 || population_size % 2 != 0)
      throw std::invalid_argument("ga config: population must be even and >= 4");
    if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate > 1.0)
      throw std::invalid_argument("ga config: rates must lie in [0, 1]");
    if (elitism < 1) throw std::invalid_argument("ga config: elitism must be >= 1");
    if (max_generations < 1) throw std::invalid_argument("ga config: need at least one generation");
  }
};

struct GenerationRecord {
  int generation = 0;
  double best_cost = 0.0;
  double best_z1 = 0.0;
  double best_z2 = 0.0;
  int feasible_count = 0;
};

struct Chromosome {
  MaskSet masks;
  CostBreakdown cost;
  bool evaluated = false;
};

struct GaState {
  int generation = 0;
  std::vector<Chromosome> population;
  MaskSet best_masks;
  CostBreakdown best_cost;
  bool has_best = false;
  Rng rng;
  int last_improvement_generation = 0;
  double improvement_ref = std::numeric_limits<double>::infinity();

  explicit GaState(std::uint64_t seed) : rng(seed) {}
};

struct GaResult {
  MaskSet best_masks;
  WeightTensor best_weights;
  CostBreakdown best_cost;
  std::vector<GenerationRecord> history;
  int generations = 0;
  std::string stop_reason;
};

using ProgressSink = std::function<void(const GenerationRecord&)>;

/// Sort-and-cull genetic engine over per-beam binary activation masks.
/// Phases never evolve; they are fixed by the steering rule. All randomness
/// comes from one seeded generator in a defined order (per generation, per
/// chromosome, per gene), and pattern evaluation merges in chromosome-index
/// order, so a given seed reproduces bit-identically at any thread count.
template <typename Scalar = float>
class GaEngine {
 public:
  GaEngine(std::vector<BeamSpec> specs, const ArrayGeometry& geometry, const AngularGrid& grid,
           const FieldOfView& fov, int cuts, const ConstraintSet& constraints, const GaConfig& config)
      : specs_(std::move(specs)),
        geometry_(geometry),
        constraints_(constraints),
        config_(config),
        evaluator_(geometry, grid, fov, cuts, specs_) {
    config_.validate();
    if (config_.mutation_rate < 0.0) config_.mutation_rate = 1.0 / geometry.element_count();
  }

  GaState init_population() {
    GaState state(config_.seed);
    state.population.resize(config_.population_size);
    for (Chromosome& chromosome : state.population) {
      chromosome.masks.assign(specs_.size(), Mask(geometry_.rows, geometry_.cols));
      for (Mask& mask : chromosome.masks)
        for (int m = 0; m < geometry_.rows; ++m)
          for (int n = 0; n < geometry_.cols; ++n) mask(m, n) = state.rng.bernoulli(0.5) ? 1 : 0;
      repair_activation(chromosome.masks, constraints_);
    }
    return state;
  }

  /// Costs for every not-yet-evaluated chromosome; updates best-so-far.
  void evaluate(GaState& state) {
    std::vector<int> dirty;
    std::vector<const MaskSet*> masks;
    for (int c = 0; c < static_cast<int>(state.population.size()); ++c)
      if (!state.population[c].evaluated) {
        dirty.push_back(c);
        masks.push_back(&state.population[c].masks);
      }
    if (!masks.empty()) {
      const auto metrics = evaluator_.evaluate(masks);
      for (std::size_t i = 0; i < dirty.size(); ++i) {
        Chromosome& chromosome = state.population[dirty[i]];
        chromosome.cost = multibeam_cost(metrics[i], specs_, config_.k1, config_.k2);
        chromosome.evaluated = true;
      }
    }
    for (const Chromosome& chromosome : state.population)
      if (!state.has_best || chromosome.cost.total < state.best_cost.total) {
        state.best_cost = chromosome.cost;
        state.best_masks = chromosome.masks;
        state.has_best = true;
      }
  }

  /// Sorts ascending by cost (ties: fewer activations, then lower index) and
  /// keeps the better half as the parent pool.
  void select_and_cull(GaState& state) {
    const int c_count = static_cast<int>(state.population.size());
    std::vector<int> order(c_count);
    std::iota(order.begin(), order.end(), 0);
    std::vector<long> activations(c_count);
    for (int c = 0; c < c_count; ++c) {
      long total = 0;
      for (const Mask& m : state.population[c].masks) total += m.sum();
      activations[c] = total;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double ca = state.population[a].cost.total;
      const double cb = state.population[b].cost.total;
      if (ca != cb) return ca < cb;
      if (activations[a] != activations[b]) return activations[a] < activations[b];
      return a < b;
    });
    std::vector<Chromosome> survivors;
    survivors.reserve(c_count / 2);
    for (int i = 0; i < c_count / 2; ++i) survivors.push_back(std::move(state.population[order[i]]));
    state.population = std::move(survivors);
  }

  /// Refills the population to C: survivors stay, the first `elitism`
  /// offspring slots are verbatim copies of the top survivors, the rest are
  /// bred with rank-weighted parent choice, uniform crossover, per-gene
  /// mutation, and constraint repair. Offspring that cannot be repaired are
  /// regenerated a bounded number of times.
  void crossover_mutate(GaState& state) {
    const int survivors = static_cast<int>(state.population.size());
    const int offspring = survivors;  // back to C total
    const int elite_clones = std::min(config_.elitism, offspring);
    const long rank_total = static_cast<long>(survivors) * (survivors + 1) / 2;

    const auto pick_parent = [&]() {
      long r = static_cast<long>(state.rng.uniform01() * rank_total);
      if (r >= rank_total) r = rank_total - 1;
      long cum = 0;
      for (int i = 0; i < survivors; ++i) {
        cum += survivors - i;  // best rank gets the largest weight
        if (r < cum) return i;
      }
      return survivors - 1;
    };

    std::vector<Chromosome> next(state.population.begin(), state.population.end());
    next.reserve(survivors + offspring);
    for (int i = 0; i < elite_clones; ++i) next.push_back(state.population[i]);  // cost carried over
    for (int i = elite_clones; i < offspring; ++i) {
      Chromosome child;
      for (int attempt = 0;; ++attempt) {
        const Chromosome& p1 = state.population[pick_parent()];
        const Chromosome& p2 = state.population[pick_parent()];
        child.masks = p1.masks;
        if (state.rng.bernoulli(config_.crossover_rate)) {
          for (std::size_t b = 0; b < child.masks.size(); ++b)
            for (int m = 0; m < geometry_.rows; ++m)
              for (int n = 0; n < geometry_.cols; ++n)
                if (state.rng.bernoulli(0.5)) child.masks[b](m, n) = p2.masks[b](m, n);
        }
        for (Mask& mask : child.masks)
          for (int m = 0; m < geometry_.rows; ++m)
            for (int n = 0; n < geometry_.cols; ++n)
              if (state.rng.bernoulli(config_.mutation_rate)) mask(m, n) = 1 - mask(m, n);
        try {
          repair_activation(child.masks, constraints_);
          break;
        } catch (const ConstraintsUnsatisfiable&) {
          if (attempt >= 31) throw;
        }
      }
      child.evaluated = false;
      next.push_back(std::move(child));
    }
    state.population = std::move(next);
  }

  GaResult run(const ProgressSink& progress = {}) {
    GaState state = init_population();
    GaResult result;
    for (;;) {
      evaluate(state);
      int feasible = 0;
      for (const Chromosome& chromosome : state.population)
        if (check_constraints(chromosome.masks, constraints_).feasible) ++feasible;
      GenerationRecord record{state.generation, state.best_cost.total, state.best_cost.z1, state.best_cost.z2,
                              feasible};
      result.history.push_back(record);
      if (progress) progress(record);

      if (state.best_cost.total < config_.f_min) {
        result.stop_reason = "f_min";
        break;
      }
      if (state.improvement_ref - state.best_cost.total >= config_.stagnation_min_improvement) {
        state.improvement_ref = state.best_cost.total;
        state.last_improvement_generation = state.generation;
      } else if (state.generation - state.last_improvement_generation >= config_.stagnation_window) {
        result.stop_reason = "stagnation";
        break;
      }
      if (state.generation + 1 >= config_.max_generations) {
        result.stop_reason = "max_generations";
        break;
      }
      select_and_cull(state);
      crossover_mutate(state);
      ++state.generation;
    }
    result.generations = state.generation + 1;
    result.best_masks = state.best_masks;
    result.best_cost = state.best_cost;
    result.best_weights.beams.reserve(specs_.size());
    for (std::size_t b = 0; b < specs_.size(); ++b)
      result.best_weights.beams.push_back(
          steered_weights(state.best_masks[b], geometry_, specs_[b].theta0_deg, specs_[b].phi0_deg));
    return result;
  }

  BatchPatternEvaluator<Scalar>& evaluator() { return evaluator_; }

 private:
  std::vector<BeamSpec> specs_;
  ArrayGeometry geometry_;
  ConstraintSet constraints_;
  GaConfig config_;
  BatchPatternEvaluator<Scalar> evaluator_;
};

}  // namespace arraysynth
