// Scenario configuration, the built-in figure presets and the runner that
// evolves a configured initial state and writes its outputs.
//
// Configuration is JSON with five sections:
//
//   {
//     "name": "figure3",
//     "physics": {"epsilon": 0.5, "force": 0.2, "d": 4, "band": {"kappa": 1}},
//     "grid":    {"x_min": -192, "x_max": 64, "n_points": 4096},
//     "time":    {"t_max": 31.4159, "n_records": 201, "engine": "replica", "dt": 0},
//     "initial": {"kind": "gaussian", "width": 5, "apodization": 0, "center": 0, "edge_taper": 0.1},
//     "output":  {"directory": "out/figure3", "formats": ["csv", "density", "heatmap"],
//                 "heatmap_scale": "frame", "x_window": [-150, 50]}
//   }
//
// A general band is given as "band": {"coefficients": [[n, re, im], ...]}.
#pragma once

#include "wstark/core.hpp"
#include "wstark/evolve.hpp"
#include "wstark/initial_states.hpp"
#include "wstark/observables.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wstark {

enum class HeatmapScale { per_frame, global };

struct ScenarioConfig {
  std::string name = "scenario";

  double epsilon = 0.5;
  double force = 0.2;
  double lattice_period = 4;
  double kappa = 0;                       ///< used when `coefficients` is empty
  std::map<int, Complex> coefficients;    ///< explicit T_n

  double x_min = -192;
  double x_max = 64;
  Eigen::Index n_points = 4096;

  double t_max = 0;
  int n_records = 201;
  Engine engine = Engine::characteristics;
  double dt = 0;

  InitialStateSpec initial;

  std::string output_directory;  ///< empty: $WSTARK_OUTPUT_DIR/<name>, else ./output/<name>
  std::vector<std::string> formats{"csv", "density", "heatmap"};
  HeatmapScale heatmap_scale = HeatmapScale::per_frame;
  std::optional<std::pair<double, double>> x_window;  ///< columns kept in density/heatmap

  PhysicalParams params() const { return PhysicalParams(epsilon, force, lattice_period); }
  BandDispersion band() const;
  SpatialGrid grid() const { return make_grid(x_min, x_max, n_points); }
  std::vector<double> record_times() const;
};

/// Parses and validates. Unknown keys are rejected.
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& config);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Cross-field checks: finiteness, engine/epsilon compatibility, d/dx integer
/// for replica and eps0_map, Airy states need epsilon > 0.
void validate_config(const ScenarioConfig& config);

/// Applies "section.key=value" to a JSON config; value is parsed as JSON when
/// possible, else taken as a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Built-in configs for the four figures. Figure 4 consists of four runs:
/// the ideal Airy carpet and apodized states with a = 300, 100, 50.
std::vector<nlohmann::json> figure_preset(int figure);

/// Output directory resolution: explicit value, else $WSTARK_OUTPUT_DIR, else "output".
std::filesystem::path default_output_root();

struct ScenarioResult {
  TrajectoryRecord record;
  Eigen::MatrixXd density;  ///< rows = records, columns = grid points in the window
  double window_x_min = 0;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
  double max_leak = 0;
};

/// Builds the initial state, evolves it, records observables and writes the
/// requested formats into the output directory.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace wstark
