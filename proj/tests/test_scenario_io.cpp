// SPDX-License-Identifier: Apache-2.0
#include "arraysynth/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace arraysynth;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json tiny_config_doc(const std::string& out_dir) {
  return json::parse(R"({
    "geometry": {"rows": 6, "cols": 6},
    "beams": [{"theta_deg": 0.0, "phi_deg": 0.0, "beamwidth_deg": 14.0, "sll_db": 8.0}],
    "constraints": {"activation_limit": "unlimited"},
    "ga": {"population": 8, "max_generations": 4, "seed": 3, "f_min": 0.0},
    "output": {"directory": ")" + out_dir +
                     R"(", "theta_step_deg": 1.0, "phi_step_deg": 5.0,
                "fine_theta_step_deg": 0.1, "cuts": 2}
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing: defaults, overrides, and strict keys") {
  const ScenarioConfig c = parse_config(tiny_config_doc("x"));
  CHECK(c.geometry.rows == 6);
  CHECK(c.geometry.spacing_x_wl == 0.6);         // default
  CHECK(c.frequency_hz == doctest::Approx(28e9));  // default
  CHECK(c.activation_limit == 0);
  CHECK(c.ga.population_size == 8);
  CHECK(c.ga.seed == 3);
  CHECK(c.output.phi_step_deg == 5.0);
  CHECK(c.fov_deg() == doctest::Approx(67.96).epsilon(0.01));  // from 500 km

  json bad = tiny_config_doc("x");
  bad["grid"] = 1;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  json bad2 = tiny_config_doc("x");
  bad2["ga"]["popsize"] = 10;
  CHECK_THROWS_AS(parse_config(bad2), ConfigError);
  json bad3 = tiny_config_doc("x");
  bad3["beams"][0]["lat_deg"] = 1.0;  // mixes scan angles with geodetic
  CHECK_THROWS_AS(parse_config(bad3), ConfigError);
  json bad4 = tiny_config_doc("x");
  bad4["constraints"]["activation_limit"] = -2;
  CHECK_THROWS_AS(parse_config(bad4), ConfigError);
  json bad5 = tiny_config_doc("x");
  bad5["ga"]["population"] = 7;  // odd
  CHECK_THROWS_AS(parse_config(bad5), ConfigError);
}

TEST_CASE("geodetic beam centers resolve through the orbit geometry") {
  json doc = tiny_config_doc("x");
  doc["beams"][0] = {{"lat_deg", 0.0}, {"lon_deg", 1.0}, {"beamwidth_deg", 14.0}, {"sll_db", 8.0}};
  doc["ga"]["max_generations"] = 1;
  const ScenarioConfig c = parse_config(doc);
  const RunReport report = run_scenario(c);
  CHECK(report.specs[0].theta0_deg > 40.0);  // 1 degree of arc from 500 km is far off nadir
  CHECK(report.specs[0].phi0_deg == doctest::Approx(90.0).epsilon(1e-6));

  doc["beams"][0]["lat_deg"] = 80.0;  // far beyond the limb
  CHECK_THROWS_AS(run_scenario(parse_config(doc)), ConfigError);
}

TEST_CASE("presets: three scenarios that differ only in the activation limit") {
  CHECK(preset_names() == std::vector<std::string>{"scenario1", "scenario2", "scenario3"});
  const ScenarioConfig s1 = preset("scenario1");
  const ScenarioConfig s2 = preset("scenario2");
  const ScenarioConfig s3 = preset("scenario3");
  CHECK(s1.activation_limit == 5);
  CHECK(s2.activation_limit == 6);
  CHECK(s3.activation_limit == 0);

  json e1 = config_echo(s1), e2 = config_echo(s2), e3 = config_echo(s3);
  for (json* e : {&e1, &e2, &e3}) (*e)["constraints"].erase("activation_limit");
  CHECK(e1 == e2);
  CHECK(e2 == e3);

  CHECK(s3.beams.size() == 7);
  CHECK(s3.beams[0].beamwidth_deg == 4.7);
  CHECK(s3.beams[6].beamwidth_deg == 7.0);
  CHECK(s3.beams[0].theta_deg == 0.0);
  CHECK(s3.beams[3].theta_deg == 10.0);
  CHECK(s3.geometry.rows == 16);
  CHECK(s3.total_power_dbm == 40.0);
  CHECK(s3.total_power_w() == doctest::Approx(10.0));
  CHECK_THROWS_AS(preset("scenario9"), ConfigError);
}

TEST_CASE("run + emit: files exist, parse, and are byte-stable") {
  const fs::path dir = fs::temp_directory_path() / "arraysynth_io_test";
  fs::remove_all(dir);
  const ScenarioConfig config = parse_config(tiny_config_doc((dir / "out").string()));

  const RunReport report = run_scenario(config);
  emit_outputs(report, config);
  for (const char* name :
       {"report.json", "beams.csv", "activation_map.csv", "activation_histogram.csv", "history.csv",
        "weights.json"})
    CHECK(fs::exists(dir / "out" / name));

  // report.json round-trips byte-identically
  const std::string text = slurp(dir / "out" / "report.json");
  const json parsed = json::parse(text);
  CHECK(parsed.dump(2) + "\n" == text);

  // the weighted histogram total equals the total activation count
  long weighted = 0;
  for (const auto& row : parsed["activation_histogram"])
    weighted += row["activations"].get<int>() * row["elements"].get<int>();
  long map_total = 0;
  for (const auto& row : parsed["activation_map"])
    for (const auto& v : row) map_total += v.get<int>();
  long beam_total = 0;
  for (const auto& row : parsed["beams"]) beam_total += row["active_elements"].get<int>();
  CHECK(weighted == map_total);
  CHECK(map_total == beam_total);

  // error column convention: 100 |achieved - target| / target
  const double achieved = parsed["beams"][0]["achieved_beamwidth_deg"].get<double>();
  const double err = parsed["beams"][0]["error_pct"].get<double>();
  CHECK(err == doctest::Approx(100.0 * std::abs(achieved - 14.0) / 14.0).epsilon(1e-9));

  // a second identical run overwrites with identical bytes
  std::map<std::string, std::string> before;
  for (const auto& entry : fs::directory_iterator(dir / "out"))
    before[entry.path().filename().string()] = slurp(entry.path());
  const RunReport report2 = run_scenario(config);
  emit_outputs(report2, config);
  for (const auto& [name, content] : before) CHECK(slurp(dir / "out" / name) == content);

  // stored weights round-trip
  const StoredWeights stored = load_weights_file((dir / "out" / "weights.json").string());
  REQUIRE(stored.masks.size() == 1);
  CHECK(stored.rows == 6);
  CHECK(stored.masks[0] == report.best_masks[0]);
  CHECK(stored.theta0_deg[0] == report.specs[0].theta0_deg);

  fs::remove_all(dir);
}

TEST_CASE("history rows and cost breakdown invariants") {
  const ScenarioConfig config = parse_config(tiny_config_doc("unused"));
  const RunReport report = run_scenario(config);
  REQUIRE(report.history.size() == 4);  // f_min 0 forces all generations
  for (std::size_t i = 0; i < report.history.size(); ++i) {
    CHECK(report.history[i].generation == static_cast<int>(i));
    CHECK(report.history[i].feasible_count == 8);
    if (i > 0) CHECK(report.history[i].best_cost <= report.history[i - 1].best_cost);
  }
  CHECK(report.best_cost.total ==
        doctest::Approx(report.best_cost.z1 + report.best_cost.z2).epsilon(1e-15));
  CHECK(report.feasible);
  CHECK(report.stop_reason == "max_generations");
}

TEST_CASE("paper-convention spot check on the error formula") {
  // 4.6827 achieved against a 4.7 target: 0.368 percent
  const double err = 100.0 * std::abs(4.6827 - 4.7) / 4.7;
  CHECK(err == doctest::Approx(0.3681).epsilon(1e-3));
  CHECK(std::abs(err - 0.3679) < 2e-3);  // the table's printed rounding
}
