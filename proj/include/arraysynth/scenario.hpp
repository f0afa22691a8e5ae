// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arraysynth/ga.hpp"
#include "arraysynth/geo.hpp"
#include "arraysynth/objective.hpp"
#include "arraysynth/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace arraysynth {

/// Configuration problems (bad file, unknown key, invalid value). The CLI
/// maps this onto exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::string directory = "out";
  double theta_step_deg = 0.1;        // optimization grid
  double phi_step_deg = 1.0;
  double fine_theta_step_deg = 0.02;  // refinement pass around the main lobe
  int cuts = 4;
  double fov_max_theta_deg = -1.0;    // < 0: derived from the orbit altitude
  double subband_guard_deg = 1.0;
  bool plots = false;
};

/// One beam request: center either as scan angles or as a geodetic point.
struct BeamInput {
  bool geodetic = false;
  double theta_deg = 0.0;
  double phi_deg = 0.0;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double beamwidth_deg = 5.0;
  double sll_db = 16.0;
};

struct ScenarioConfig {
  ArrayGeometry geometry;
  double frequency_hz = 28e9;
  double altitude_km = 500.0;
  GeoPoint subsatellite;
  std::vector<BeamInput> beams;
  double total_power_dbm = 40.0;
  int activation_limit = 0;        // 0 = unlimited
  double element_power_w = -1.0;   // < 0: total power budget spread over M*N*B
  GaConfig ga;
  OutputConfig output;

  double total_power_w() const { return std::pow(10.0, (total_power_dbm - 30.0) / 10.0); }
  double fov_deg() const {
    return output.fov_max_theta_deg > 0.0
               ? output.fov_max_theta_deg
               : std::asin(kEarthRadiusKm / (kEarthRadiusKm + altitude_km)) * kRadToDeg;
  }
};

/// Parses a config document; any key outside the schema is an error.
ScenarioConfig parse_config(const nlohmann::ordered_json& doc);
ScenarioConfig load_config_file(const std::string& path);

/// Effective configuration (defaults resolved) as written into report.json.
nlohmann::ordered_json config_echo(const ScenarioConfig& config);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ScenarioConfig preset(const std::string& name);
/// File path or preset name.
ScenarioConfig resolve_config(const std::string& arg);

struct BeamReportRow {
  int beam = 0;
  double theta0_deg = 0.0;
  double phi0_deg = 0.0;
  int subband = 0;
  double target_beamwidth_deg = 0.0;
  double achieved_beamwidth_deg = 0.0;
  double error_pct = 0.0;
  double sll_db = 0.0;
  int active_elements = 0;
  double directivity_dbi = 0.0;
  double eirp_dbw = 0.0;
};

struct RunReport {
  std::vector<BeamReportRow> beams;
  Eigen::MatrixXi activation_map;
  std::vector<int> histogram;  // histogram[k-1] = elements activated exactly k times
  std::vector<GenerationRecord> history;
  MaskSet best_masks;
  std::vector<BeamSpec> specs;
  CostBreakdown best_cost;
  bool feasible = true;
  std::string stop_reason;
  int generations = 0;
  std::uint64_t seed = 0;
  nlohmann::ordered_json config;
};

/// Reported (fine) metrics of one stored beam mask: side-lobe level and
/// directivity from a full-hemisphere pattern at the optimization steps,
/// beamwidth from exact cut sampling at the fine theta step around a locally
/// refined peak.
BeamMetrics refine_beam_metrics(const Mask& mask, const ArrayGeometry& geometry, const BeamSpec& spec,
                                const OutputConfig& output, const FieldOfView& fov);

/// Full pipeline: scan-angle resolution, sub-band coloring, GA run,
/// per-beam refinement.
RunReport run_scenario(const ScenarioConfig& config, const ProgressSink& progress = {});

/// Writes report.json, beams.csv, activation_map.csv, activation_histogram.csv,
/// history.csv, weights.json and optional per-beam pattern-cut SVGs, all via
/// temp-file-plus-rename.
void emit_outputs(const RunReport& report, const ScenarioConfig& config);

/// Stored weight tensor (masks plus scan angles) for `synth verify`.
nlohmann::ordered_json weights_to_json(const RunReport& report, const ScenarioConfig& config);
struct StoredWeights {
  int rows = 0;
  int cols = 0;
  MaskSet masks;
  std::vector<double> theta0_deg;
  std::vector<double> phi0_deg;
};
StoredWeights load_weights_file(const std::string& path);

}  // namespace arraysynth
