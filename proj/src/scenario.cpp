// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/scenario.hpp"

#include "arraysynth/array_pattern.hpp"
#include "arraysynth/pattern_metrics.hpp"
#include "arraysynth/subbands.hpp"
#include "arraysynth/unit_cell.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace arraysynth {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& context) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw ConfigError("unknown key '" + context + "." + item.key() + "'");
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(std::string("expected a number for '") + key + "'");
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw ConfigError(std::string("expected an integer for '") + key + "'");
  return obj[key].get<int>();
}

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void atomic_write(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.parent_path() / (".tmp." + path.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace

ScenarioConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  check_keys(doc, {"geometry", "orbit", "beams", "constraints", "ga", "output"}, "config");

  ScenarioConfig config;

  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    check_keys(g, {"rows", "cols", "spacing_x_wl", "spacing_y_wl", "aperture_radius_wl", "frequency_hz"},
               "geometry");
    config.geometry.rows = get_int(g, "rows", config.geometry.rows);
    config.geometry.cols = get_int(g, "cols", config.geometry.cols);
    config.geometry.spacing_x_wl = get_num(g, "spacing_x_wl", config.geometry.spacing_x_wl);
    config.geometry.spacing_y_wl = get_num(g, "spacing_y_wl", config.geometry.spacing_y_wl);
    config.geometry.aperture_radius_wl = get_num(g, "aperture_radius_wl", config.geometry.aperture_radius_wl);
    config.frequency_hz = get_num(g, "frequency_hz", config.frequency_hz);
  }
  if (config.frequency_hz <= 0.0) throw ConfigError("geometry.frequency_hz must be positive");
  config.geometry.wavelength_m = kSpeedOfLight / config.frequency_hz;

  if (doc.contains("orbit")) {
    const json& o = doc["orbit"];
    check_keys(o, {"altitude_km", "subsatellite_lat_deg", "subsatellite_lon_deg"}, "orbit");
    config.altitude_km = get_num(o, "altitude_km", config.altitude_km);
    config.subsatellite.lat_deg = get_num(o, "subsatellite_lat_deg", 0.0);
    config.subsatellite.lon_deg = get_num(o, "subsatellite_lon_deg", 0.0);
  }
  if (config.altitude_km <= 0.0) throw ConfigError("orbit.altitude_km must be positive");

  if (!doc.contains("beams") || !doc["beams"].is_array() || doc["beams"].empty())
    throw ConfigError("config needs a non-empty 'beams' array");
  for (const json& b : doc["beams"]) {
    check_keys(b, {"theta_deg", "phi_deg", "lat_deg", "lon_deg", "beamwidth_deg", "sll_db"}, "beams[]");
    BeamInput beam;
    const bool scan = b.contains("theta_deg") || b.contains("phi_deg");
    const bool geo = b.contains("lat_deg") || b.contains("lon_deg");
    if (scan == geo) throw ConfigError("each beam needs either theta_deg/phi_deg or lat_deg/lon_deg");
    beam.geodetic = geo;
    beam.theta_deg = get_num(b, "theta_deg", 0.0);
    beam.phi_deg = get_num(b, "phi_deg", 0.0);
    beam.lat_deg = get_num(b, "lat_deg", 0.0);
    beam.lon_deg = get_num(b, "lon_deg", 0.0);
    beam.beamwidth_deg = get_num(b, "beamwidth_deg", 0.0);
    beam.sll_db = get_num(b, "sll_db", 16.0);
    if (beam.beamwidth_deg <= 0.0) throw ConfigError("beams[].beamwidth_deg must be positive");
    if (beam.sll_db <= 0.0) throw ConfigError("beams[].sll_db must be positive");
    config.beams.push_back(beam);
  }

  if (doc.contains("constraints")) {
    const json& c = doc["constraints"];
    check_keys(c, {"total_power_dbm", "activation_limit", "element_power_w"}, "constraints");
    config.total_power_dbm = get_num(c, "total_power_dbm", config.total_power_dbm);
    if (c.contains("activation_limit")) {
      if (c["activation_limit"].is_string()) {
        if (c["activation_limit"].get<std::string>() != "unlimited")
          throw ConfigError("constraints.activation_limit must be a positive integer or \"unlimited\"");
        config.activation_limit = 0;
      } else {
        config.activation_limit = get_int(c, "activation_limit", 0);
        if (config.activation_limit <= 0)
          throw ConfigError("constraints.activation_limit must be a positive integer or \"unlimited\"");
      }
    }
    config.element_power_w = get_num(c, "element_power_w", -1.0);
  }

  if (doc.contains("ga")) {
    const json& g = doc["ga"];
    check_keys(g,
               {"population", "max_generations", "f_min", "crossover_rate", "mutation_rate", "elitism", "seed",
                "k1", "k2", "stagnation_window", "stagnation_min_improvement"},
               "ga");
    config.ga.population_size = get_int(g, "population", config.ga.population_size);
    config.ga.max_generations = get_int(g, "max_generations", config.ga.max_generations);
    config.ga.f_min = get_num(g, "f_min", config.ga.f_min);
    config.ga.crossover_rate = get_num(g, "crossover_rate", config.ga.crossover_rate);
    config.ga.mutation_rate = get_num(g, "mutation_rate", config.ga.mutation_rate);
    config.ga.elitism = get_int(g, "elitism", config.ga.elitism);
    if (g.contains("seed")) config.ga.seed = g["seed"].get<std::uint64_t>();
    config.ga.k1 = get_num(g, "k1", config.ga.k1);
    config.ga.k2 = get_num(g, "k2", config.ga.k2);
    config.ga.stagnation_window = get_int(g, "stagnation_window", config.ga.stagnation_window);
    config.ga.stagnation_min_improvement =
        get_num(g, "stagnation_min_improvement", config.ga.stagnation_min_improvement);
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o,
               {"directory", "theta_step_deg", "phi_step_deg", "fine_theta_step_deg", "cuts",
                "fov_max_theta_deg", "subband_guard_deg"},
               "output");
    if (o.contains("directory")) config.output.directory = o["directory"].get<std::string>();
    config.output.theta_step_deg = get_num(o, "theta_step_deg", config.output.theta_step_deg);
    config.output.phi_step_deg = get_num(o, "phi_step_deg", config.output.phi_step_deg);
    config.output.fine_theta_step_deg = get_num(o, "fine_theta_step_deg", config.output.fine_theta_step_deg);
    config.output.cuts = get_int(o, "cuts", config.output.cuts);
    config.output.fov_max_theta_deg = get_num(o, "fov_max_theta_deg", -1.0);
    config.output.subband_guard_deg = get_num(o, "subband_guard_deg", config.output.subband_guard_deg);
  }

  try {
    config.geometry.validate();
    config.ga.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (config.output.theta_step_deg <= 0.0 || config.output.phi_step_deg <= 0.0 ||
      config.output.fine_theta_step_deg <= 0.0)
    throw ConfigError("output grid steps must be positive");
  if (config.output.cuts < 1) throw ConfigError("output.cuts must be at least 1");
  if (config.output.fov_max_theta_deg > 90.0) throw ConfigError("output.fov_max_theta_deg must be <= 90");
  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

json config_echo(const ScenarioConfig& config) {
  json doc;
  doc["geometry"] = {{"rows", config.geometry.rows},
                     {"cols", config.geometry.cols},
                     {"spacing_x_wl", config.geometry.spacing_x_wl},
                     {"spacing_y_wl", config.geometry.spacing_y_wl},
                     {"aperture_radius_wl", config.geometry.aperture_radius_wl},
                     {"frequency_hz", config.frequency_hz}};
  doc["orbit"] = {{"altitude_km", config.altitude_km},
                  {"subsatellite_lat_deg", config.subsatellite.lat_deg},
                  {"subsatellite_lon_deg", config.subsatellite.lon_deg}};
  doc["beams"] = json::array();
  for (const BeamInput& b : config.beams) {
    json beam;
    if (b.geodetic) {
      beam["lat_deg"] = b.lat_deg;
      beam["lon_deg"] = b.lon_deg;
    } else {
      beam["theta_deg"] = b.theta_deg;
      beam["phi_deg"] = b.phi_deg;
    }
    beam["beamwidth_deg"] = b.beamwidth_deg;
    beam["sll_db"] = b.sll_db;
    doc["beams"].push_back(beam);
  }
  doc["constraints"] = json::object();
  doc["constraints"]["total_power_dbm"] = config.total_power_dbm;
  if (config.activation_limit > 0)
    doc["constraints"]["activation_limit"] = config.activation_limit;
  else
    doc["constraints"]["activation_limit"] = "unlimited";
  const int beams = static_cast<int>(config.beams.size());
  const double p_e = config.element_power_w > 0.0
                         ? config.element_power_w
                         : config.total_power_w() / (config.geometry.element_count() * beams);
  doc["constraints"]["element_power_w"] = p_e;
  doc["ga"] = {{"population", config.ga.population_size},
               {"max_generations", config.ga.max_generations},
               {"f_min", config.ga.f_min},
               {"crossover_rate", config.ga.crossover_rate},
               {"mutation_rate", config.ga.mutation_rate < 0.0
                                     ? 1.0 / config.geometry.element_count()
                                     : config.ga.mutation_rate},
               {"elitism", config.ga.elitism},
               {"seed", config.ga.seed},
               {"k1", config.ga.k1},
               {"k2", config.ga.k2},
               {"stagnation_window", config.ga.stagnation_window},
               {"stagnation_min_improvement", config.ga.stagnation_min_improvement}};
  doc["output"] = {{"directory", config.output.directory},
                   {"theta_step_deg", config.output.theta_step_deg},
                   {"phi_step_deg", config.output.phi_step_deg},
                   {"fine_theta_step_deg", config.output.fine_theta_step_deg},
                   {"cuts", config.output.cuts},
                   {"fov_max_theta_deg", config.fov_deg()},
                   {"subband_guard_deg", config.output.subband_guard_deg}};
  return doc;
}

std::vector<std::string> preset_names() { return {"scenario1", "scenario2", "scenario3"}; }

bool is_preset(const std::string& name) {
  for (const std::string& p : preset_names())
    if (p == name) return true;
  return false;
}

ScenarioConfig preset(const std::string& name) {
  if (!is_preset(name)) throw ConfigError("unknown preset: " + name);
  ScenarioConfig config;  // defaults carry the common parameters
  const double targets[7] = {4.7, 5.5, 6.0, 6.5, 5.8, 5.0, 7.0};
  for (int b = 0; b < 7; ++b) {
    BeamInput beam;
    // beam 1 at nadir, beams 2-7 on a hexagonal ring scanned 10 degrees off
    beam.theta_deg = b == 0 ? 0.0 : 10.0;
    beam.phi_deg = b == 0 ? 0.0 : (b - 1) * 60.0;
    beam.beamwidth_deg = targets[b];
    beam.sll_db = 16.0;
    config.beams.push_back(beam);
  }
  if (name == "scenario1") config.activation_limit = 5;
  if (name == "scenario2") config.activation_limit = 6;
  if (name == "scenario3") config.activation_limit = 0;
  return config;
}

ScenarioConfig resolve_config(const std::string& arg) {
  if (fs::exists(arg)) return load_config_file(arg);
  if (is_preset(arg)) return preset(arg);
  throw ConfigError("no such config file or preset: " + arg);
}

BeamMetrics refine_beam_metrics(const Mask& mask, const ArrayGeometry& geometry, const BeamSpec& spec,
                                const OutputConfig& output, const FieldOfView& fov) {
  const ComplexMatrix weights = steered_weights(mask, geometry, spec.theta0_deg, spec.phi0_deg);
  const AngularGrid hemi = AngularGrid::hemisphere(output.theta_step_deg, output.phi_step_deg);
  const PowerPattern pattern = array_pattern(weights, geometry, hemi);

  BeamMetrics metrics;
  metrics.sll_db = sll(pattern, fov);
  metrics.directivity_dbi = directivity_dbi(pattern);
  metrics.active_elements = mask.sum();

  const auto point_power = [&](double theta_deg, double phi_deg) {
    return std::norm(array_factor(weights, geometry, theta_deg, phi_deg)) *
           unit_cell_power(theta_deg, 0.0, geometry);
  };

  // Local peak refinement around the coarse grid maximum.
  double peak_theta = pattern.peak_theta_deg;
  double peak_phi = pattern.peak_phi_deg;
  double peak_power = point_power(peak_theta, peak_phi);
  const double span_t = output.theta_step_deg;
  const double span_p = output.phi_step_deg;
  for (double t = std::max(0.0, pattern.peak_theta_deg - span_t);
       t <= std::min(90.0, pattern.peak_theta_deg + span_t) + 1e-12; t += output.fine_theta_step_deg)
    for (double p = pattern.peak_phi_deg - span_p; p <= pattern.peak_phi_deg + span_p + 1e-12;
         p += 0.1 * span_p) {
      const double v = point_power(t, p);
      if (v > peak_power) {
        peak_power = v;
        peak_theta = t;
        peak_phi = p;
      }
    }
  metrics.peak_theta_deg = peak_theta;
  metrics.peak_phi_deg = peak_phi;

  // Exact cut sampling at the fine step, same crossing rule as the grid path.
  const double tp = peak_theta * kDegToRad;
  const double pp = peak_phi * kDegToRad;
  const Eigen::Vector3d e(std::sin(tp) * std::cos(pp), std::sin(tp) * std::sin(pp), std::cos(tp));
  const Eigen::Vector3d t1(std::cos(tp) * std::cos(pp), std::cos(tp) * std::sin(pp), -std::sin(tp));
  const Eigen::Vector3d t2(-std::sin(pp), std::cos(pp), 0.0);
  const double step = output.fine_theta_step_deg;
  const double half_db = 10.0 * std::log10(0.5);
  metrics.cut_widths_deg.resize(output.cuts);
  for (int r = 0; r < output.cuts; ++r) {
    const double delta = r * kPi / output.cuts;
    const Eigen::Vector3d w = t1 * std::cos(delta) + t2 * std::sin(delta);
    double half[2];
    for (int s = 0; s < 2; ++s) {
      const double sign = s == 0 ? 1.0 : -1.0;
      double prev_db = 0.0;
      bool found = false;
      const int max_k = static_cast<int>(90.0 / step);
      for (int k = 1; k <= max_k; ++k) {
        const double t = sign * k * step * kDegToRad;
        const Eigen::Vector3d d = e * std::cos(t) + w * std::sin(t);
        const double theta = std::acos(std::max(-1.0, std::min(1.0, d.z()))) * kRadToDeg;
        if (theta > 90.0) throw std::runtime_error("beamwidth: main lobe wider than grid");
        const double phi = std::atan2(d.y(), d.x()) * kRadToDeg;
        const double v = point_power(theta, phi) / peak_power;
        const double v_db = v > 0.0 ? 10.0 * std::log10(v) : -400.0;
        if (v_db <= half_db) {
          const double frac = (prev_db - half_db) / (prev_db - v_db);
          half[s] = (k - 1 + frac) * step;
          found = true;
          break;
        }
        prev_db = v_db;
      }
      if (!found) throw std::runtime_error("beamwidth: fewer than 2 half-power crossings in cut");
    }
    metrics.cut_widths_deg[r] = half[0] + half[1];
  }
  double sum = 0.0;
  for (double w2 : metrics.cut_widths_deg) sum += w2;
  metrics.beamwidth_deg = sum / output.cuts;
  return metrics;
}

RunReport run_scenario(const ScenarioConfig& config, const ProgressSink& progress) {
  const int beams = static_cast<int>(config.beams.size());
  const double fov_deg = config.fov_deg();

  std::vector<BeamSpec> specs(beams);
  for (int b = 0; b < beams; ++b) {
    const BeamInput& in = config.beams[b];
    BeamSpec& spec = specs[b];
    if (in.geodetic) {
      ScanAngles scan;
      try {
        scan = latlon_to_scan({in.lat_deg, in.lon_deg}, config.subsatellite, config.altitude_km);
      } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
      }
      spec.theta0_deg = scan.theta_deg;
      spec.phi0_deg = scan.phi_deg;
    } else {
      spec.theta0_deg = in.theta_deg;
      spec.phi0_deg = in.phi_deg;
    }
    if (spec.theta0_deg >= fov_deg) throw ConfigError("beam center outside the field of view");
    spec.target_beamwidth_deg = in.beamwidth_deg;
    spec.target_sll_db = in.sll_db;
  }
  const std::vector<int> colors = assign_subbands(specs, config.output.subband_guard_deg);
  for (int b = 0; b < beams; ++b) specs[b].subband = colors[b];

  const double p_max_w = config.total_power_w();
  const double p_e = config.element_power_w > 0.0
                         ? config.element_power_w
                         : p_max_w / (config.geometry.element_count() * beams);
  const ConstraintSet constraints = ConstraintSet::uniform(config.geometry.rows, config.geometry.cols,
                                                           config.activation_limit, beams, p_max_w, p_e);

  const double grid_max =
      std::min(90.0, std::ceil(fov_deg / config.output.theta_step_deg - 1e-9) * config.output.theta_step_deg);
  const AngularGrid grid = AngularGrid::cap(grid_max, config.output.theta_step_deg, config.output.phi_step_deg);
  const FieldOfView fov{fov_deg};

  GaEngine<float> engine(specs, config.geometry, grid, fov, config.output.cuts, constraints, config.ga);
  const GaResult result = engine.run(progress);

  RunReport report;
  report.specs = specs;
  report.best_masks = result.best_masks;
  report.best_cost = result.best_cost;
  report.history = result.history;
  report.generations = result.generations;
  report.stop_reason = result.stop_reason;
  report.seed = config.ga.seed;
  report.config = config_echo(config);

  const double tx_dbw = config.total_power_dbm - 30.0;
  for (int b = 0; b < beams; ++b) {
    const BeamMetrics metrics =
        refine_beam_metrics(result.best_masks[b], config.geometry, specs[b], config.output, fov);
    BeamReportRow row;
    row.beam = b + 1;
    row.theta0_deg = specs[b].theta0_deg;
    row.phi0_deg = specs[b].phi0_deg;
    row.subband = specs[b].subband;
    row.target_beamwidth_deg = specs[b].target_beamwidth_deg;
    row.achieved_beamwidth_deg = metrics.beamwidth_deg;
    row.error_pct = 100.0 * std::abs(metrics.beamwidth_deg - specs[b].target_beamwidth_deg) /
                    specs[b].target_beamwidth_deg;
    row.sll_db = metrics.sll_db;
    row.active_elements = metrics.active_elements;
    row.directivity_dbi = metrics.directivity_dbi;
    row.eirp_dbw = eirp_dbw(metrics.directivity_dbi, tx_dbw);
    report.beams.push_back(row);
  }

  report.activation_map = Eigen::MatrixXi::Zero(config.geometry.rows, config.geometry.cols);
  for (const Mask& m : result.best_masks) report.activation_map += m;
  report.histogram.assign(beams, 0);
  for (int i = 0; i < config.geometry.rows; ++i)
    for (int j = 0; j < config.geometry.cols; ++j) {
      const int k = report.activation_map(i, j);
      if (k >= 1) ++report.histogram[k - 1];
    }
  report.feasible = check_constraints(result.best_masks, constraints).feasible;
  return report;
}

namespace {

json report_to_json(const RunReport& report) {
  json doc;
  doc["config"] = report.config;
  doc["seed"] = report.seed;
  doc["stop_reason"] = report.stop_reason;
  doc["generations"] = report.generations;
  doc["feasible"] = report.feasible;
  doc["best_cost"] = {{"total", report.best_cost.total}, {"z1", report.best_cost.z1}, {"z2", report.best_cost.z2}};
  doc["beams"] = json::array();
  for (const BeamReportRow& row : report.beams)
    doc["beams"].push_back({{"beam", row.beam},
                            {"theta0_deg", row.theta0_deg},
                            {"phi0_deg", row.phi0_deg},
                            {"subband", row.subband},
                            {"target_beamwidth_deg", row.target_beamwidth_deg},
                            {"achieved_beamwidth_deg", row.achieved_beamwidth_deg},
                            {"error_pct", row.error_pct},
                            {"sll_db", row.sll_db},
                            {"active_elements", row.active_elements},
                            {"directivity_dbi", row.directivity_dbi},
                            {"eirp_dbw", row.eirp_dbw}});
  doc["activation_map"] = json::array();
  for (int i = 0; i < report.activation_map.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < report.activation_map.cols(); ++j) row.push_back(report.activation_map(i, j));
    doc["activation_map"].push_back(row);
  }
  doc["activation_histogram"] = json::array();
  for (std::size_t k = 0; k < report.histogram.size(); ++k)
    doc["activation_histogram"].push_back(
        {{"activations", static_cast<int>(k + 1)}, {"elements", report.histogram[k]}});
  doc["history"] = json::array();
  for (const GenerationRecord& r : report.history)
    doc["history"].push_back({{"generation", r.generation},
                              {"best_cost", r.best_cost},
                              {"z1", r.best_z1},
                              {"z2", r.best_z2},
                              {"feasible_count", r.feasible_count}});
  doc["notes"] = {
      {"eirp", "EIRP uses directivity as gain (lossless antenna)."},
      {"power", "total power constraint is element_power_w * total activation count <= total power budget"},
      {"histogram", "row k counts elements activated exactly k times; never-activated elements are unlisted"}};
  return doc;
}

std::string beams_csv(const RunReport& report) {
  std::ostringstream out;
  out << "beam,theta0_deg,phi0_deg,subband,target_beamwidth_deg,achieved_beamwidth_deg,error_pct,"
         "sll_db,active_elements,directivity_dbi,eirp_dbw\n";
  for (const BeamReportRow& r : report.beams)
    out << r.beam << ',' << format_g6(r.theta0_deg) << ',' << format_g6(r.phi0_deg) << ',' << r.subband << ','
        << format_g6(r.target_beamwidth_deg) << ',' << format_g6(r.achieved_beamwidth_deg) << ','
        << format_g6(r.error_pct) << ',' << format_g6(r.sll_db) << ',' << r.active_elements << ','
        << format_g6(r.directivity_dbi) << ',' << format_g6(r.eirp_dbw) << '\n';
  return out.str();
}

std::string activation_map_csv(const RunReport& report) {
  std::ostringstream out;
  for (int j = 0; j < report.activation_map.cols(); ++j) out << (j ? "," : "") << 'c' << j;
  out << '\n';
  for (int i = 0; i < report.activation_map.rows(); ++i) {
    for (int j = 0; j < report.activation_map.cols(); ++j) out << (j ? "," : "") << report.activation_map(i, j);
    out << '\n';
  }
  return out.str();
}

std::string histogram_csv(const RunReport& report) {
  std::ostringstream out;
  out << "activations,elements\n";
  for (std::size_t k = 0; k < report.histogram.size(); ++k) out << k + 1 << ',' << report.histogram[k] << '\n';
  return out.str();
}

std::string history_csv(const RunReport& report) {
  std::ostringstream out;
  out << "generation,best_cost,z1,z2\n";
  for (const GenerationRecord& r : report.history)
    out << r.generation << ',' << format_g6(r.best_cost) << ',' << format_g6(r.best_z1) << ','
        << format_g6(r.best_z2) << '\n';
  return out.str();
}

std::string pattern_cut_svg(const Mask& mask, const ArrayGeometry& geometry, const BeamSpec& spec) {
  const ComplexMatrix weights = steered_weights(mask, geometry, spec.theta0_deg, spec.phi0_deg);
  const double floor_db = -40.0;
  const double span = 30.0;
  const double step = 0.05;
  const int samples = static_cast<int>(2 * span / step) + 1;

  std::vector<std::vector<double>> cuts(2, std::vector<double>(samples));
  double peak = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int k = 0; k < samples; ++k) {
      const double t = -span + k * step;
      const double phi = spec.phi0_deg + c * 90.0 + (t < 0.0 ? 180.0 : 0.0);
      const double theta = std::min(90.0, std::abs(spec.theta0_deg + t));
      const double v = std::norm(array_factor(weights, geometry, theta, phi)) *
                       unit_cell_power(theta, 0.0, geometry);
      cuts[c][k] = v;
      peak = std::max(peak, v);
    }

  const int width = 640, height = 420, ml = 50, mr = 15, mt = 15, mb = 35;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int db = 0; db >= floor_db; db -= 10) {
    const double y = mt + (0.0 - db) / (0.0 - floor_db) * (height - mt - mb);
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << width - mr << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"5\" y=\"" << y + 4 << "\" font-size=\"11\">" << db << " dB</text>\n";
  }
  const char* color[2] = {"#1f77b4", "#d62728"};
  for (int c = 0; c < 2; ++c) {
    svg << "<polyline fill=\"none\" stroke=\"" << color[c] << "\" stroke-width=\"1.2\" points=\"";
    for (int k = 0; k < samples; ++k) {
      const double db = cuts[c][k] > 0.0 ? std::max(floor_db, 10.0 * std::log10(cuts[c][k] / peak)) : floor_db;
      const double x = ml + static_cast<double>(k) / (samples - 1) * (width - ml - mr);
      const double y = mt + (0.0 - db) / (0.0 - floor_db) * (height - mt - mb);
      svg << x << ',' << y << ' ';
    }
    svg << "\"/>\n";
  }
  svg << "<text x=\"" << ml << "\" y=\"" << height - 10
      << "\" font-size=\"11\">offset from beam center, -30..+30 deg; blue: principal cut, red: +90 deg cut"
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

json weights_to_json(const RunReport& report, const ScenarioConfig& config) {
  json doc;
  doc["rows"] = config.geometry.rows;
  doc["cols"] = config.geometry.cols;
  doc["beams"] = json::array();
  for (std::size_t b = 0; b < report.best_masks.size(); ++b) {
    json beam;
    beam["theta0_deg"] = report.specs[b].theta0_deg;
    beam["phi0_deg"] = report.specs[b].phi0_deg;
    json mask = json::array();
    for (int i = 0; i < report.best_masks[b].rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < report.best_masks[b].cols(); ++j) row.push_back(report.best_masks[b](i, j));
      mask.push_back(row);
    }
    beam["mask"] = mask;
    doc["beams"].push_back(beam);
  }
  return doc;
}

StoredWeights load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weights file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("weights parse error in " + path + ": " + e.what());
  }
  StoredWeights weights;
  try {
    weights.rows = doc.at("rows").get<int>();
    weights.cols = doc.at("cols").get<int>();
    for (const json& beam : doc.at("beams")) {
      weights.theta0_deg.push_back(beam.at("theta0_deg").get<double>());
      weights.phi0_deg.push_back(beam.at("phi0_deg").get<double>());
      Mask mask(weights.rows, weights.cols);
      const json& rows = beam.at("mask");
      for (int i = 0; i < weights.rows; ++i)
        for (int j = 0; j < weights.cols; ++j) {
          const int v = rows.at(i).at(j).get<int>();
          if (v != 0 && v != 1) throw ConfigError("weights: mask entries must be 0 or 1");
          mask(i, j) = v;
        }
      weights.masks.push_back(mask);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("weights file " + path + " is malformed: " + e.what());
  }
  if (weights.masks.empty()) throw ConfigError("weights file has no beams");
  return weights;
}

void emit_outputs(const RunReport& report, const ScenarioConfig& config) {
  const fs::path dir = config.output.directory;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error("cannot create output directory: " + dir.string());

  atomic_write(dir / "report.json", report_to_json(report).dump(2) + "\n");
  atomic_write(dir / "beams.csv", beams_csv(report));
  atomic_write(dir / "activation_map.csv", activation_map_csv(report));
  atomic_write(dir / "activation_histogram.csv", histogram_csv(report));
  atomic_write(dir / "history.csv", history_csv(report));
  atomic_write(dir / "weights.json", weights_to_json(report, config).dump(2) + "\n");
  if (config.output.plots)
    for (std::size_t b = 0; b < report.best_masks.size(); ++b)
      atomic_write(dir / ("pattern_beam" + std::to_string(b + 1) + ".svg"),
                   pattern_cut_svg(report.best_masks[b], config.geometry, report.specs[b]));
}

}  // namespace arraysynth
