// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

using namespace arraysynth;

void print_beam_table(const std::vector<BeamReportRow>& rows) {
  std::printf("%4s %10s %10s %8s %10s %10s %8s %8s %6s %8s %8s\n", "beam", "theta0", "phi0", "subband",
              "target_bw", "bw", "err_pct", "sll_db", "act", "dir_dbi", "eirp");
  for (const BeamReportRow& r : rows)
    std::printf("%4d %10.3f %10.3f %8d %10.4f %10.4f %8.4f %8.3f %6d %8.3f %8.3f\n", r.beam, r.theta0_deg,
                r.phi0_deg, r.subband, r.target_beamwidth_deg, r.achieved_beamwidth_deg, r.error_pct, r.sll_db,
                r.active_elements, r.directivity_dbi, r.eirp_dbw);
}

int run_command(const std::string& config_arg, std::uint64_t seed, bool seed_set, const std::string& out_dir,
                bool plots, bool progress) {
  ScenarioConfig config = resolve_config(config_arg);
  if (seed_set) config.ga.seed = seed;
  if (!out_dir.empty()) config.output.directory = out_dir;
  config.output.plots = plots;

  ProgressSink sink;
  if (progress)
    sink = [](const GenerationRecord& r) {
      std::fprintf(stderr, "{\"generation\":%d,\"best_cost\":%.9g,\"z1\":%.9g,\"z2\":%.9g,\"feasible\":%d}\n",
                   r.generation, r.best_cost, r.best_z1, r.best_z2, r.feasible_count);
    };

  const RunReport report = run_scenario(config, sink);
  emit_outputs(report, config);

  std::printf("seed %llu, %d generations, stop: %s, cost %.6g (z1 %.6g, z2 %.6g)\n",
              static_cast<unsigned long long>(report.seed), report.generations, report.stop_reason.c_str(),
              report.best_cost.total, report.best_cost.z1, report.best_cost.z2);
  print_beam_table(report.beams);
  std::printf("outputs written to %s\n", config.output.directory.c_str());
  return 0;
}

int verify_command(const std::string& weights_path, const std::string& config_arg) {
  ScenarioConfig config = resolve_config(config_arg);
  const StoredWeights stored = load_weights_file(weights_path);
  if (stored.rows != config.geometry.rows || stored.cols != config.geometry.cols)
    throw ConfigError("weights grid does not match config geometry");
  if (stored.masks.size() != config.beams.size())
    throw ConfigError("weights beam count does not match config");

  const FieldOfView fov{config.fov_deg()};
  std::vector<BeamReportRow> rows;
  const double tx_dbw = config.total_power_dbm - 30.0;
  for (std::size_t b = 0; b < stored.masks.size(); ++b) {
    BeamSpec spec;
    spec.theta0_deg = stored.theta0_deg[b];
    spec.phi0_deg = stored.phi0_deg[b];
    spec.target_beamwidth_deg = config.beams[b].beamwidth_deg;
    spec.target_sll_db = config.beams[b].sll_db;
    const BeamMetrics metrics = refine_beam_metrics(stored.masks[b], config.geometry, spec, config.output, fov);
    BeamReportRow row;
    row.beam = static_cast<int>(b) + 1;
    row.theta0_deg = spec.theta0_deg;
    row.phi0_deg = spec.phi0_deg;
    row.subband = -1;
    row.target_beamwidth_deg = spec.target_beamwidth_deg;
    row.achieved_beamwidth_deg = metrics.beamwidth_deg;
    row.error_pct =
        100.0 * std::abs(metrics.beamwidth_deg - spec.target_beamwidth_deg) / spec.target_beamwidth_deg;
    row.sll_db = metrics.sll_db;
    row.active_elements = metrics.active_elements;
    row.directivity_dbi = metrics.directivity_dbi;
    row.eirp_dbw = eirp_dbw(metrics.directivity_dbi, tx_dbw);
    rows.push_back(row);
  }
  print_beam_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinned multi-beam planar-array synthesis"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "synthesize beam weights from a config file or preset");
  std::string config_arg;
  run->add_option("config", config_arg, "config file path or preset name")->required();
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = run->add_option("--seed", seed, "override the RNG seed");
  std::string out_dir;
  run->add_option("--out", out_dir, "override the output directory");
  bool plots = false;
  run->add_flag("--plots", plots, "write per-beam pattern-cut SVGs");
  bool progress = false;
  run->add_flag("--progress", progress, "stream per-generation JSON records to stderr");

  auto* presets = app.add_subcommand("presets", "preset scenarios");
  auto* presets_list = presets->add_subcommand("list", "list available presets");
  presets->require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "measure pattern metrics of a stored weight tensor");
  std::string weights_path, verify_config;
  verify->add_option("weights", weights_path, "weights.json produced by a run")->required();
  verify->add_option("config", verify_config, "config file path or preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed())
      return run_command(config_arg, seed, seed_opt->count() > 0, out_dir, plots, progress);
    if (presets_list->parsed()) {
      for (const std::string& name : arraysynth::preset_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
    if (verify->parsed()) return verify_command(weights_path, verify_config);
  } catch (const arraysynth::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const arraysynth::ConstraintsUnsatisfiable& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
