#include "wstark/scenario.hpp"

#include "wstark/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>

namespace wstark {

using nlohmann::json;

namespace {

// Reads keys from one JSON object and remembers which were consumed so that
// leftovers (typos) can be reported.
class Section {
 public:
  Section(const json& parent, const std::string& name) : name_(name) {
    if (!parent.contains(name)) {
      node_ = json::object();
      return;
    }
    node_ = parent.at(name);
    if (!node_.is_object()) throw std::invalid_argument("config: '" + name + "' must be an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) throw std::invalid_argument("config: " + name_ + "." + key + " must be a number");
    const double value = v.get<double>();
    if (!std::isfinite(value)) throw std::invalid_argument("config: " + name_ + "." + key + " must be finite");
    return value;
  }

  long long integer(const std::string& key, long long fallback) {
    used_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument("config: " + name_ + "." + key + " must be an integer");
    return v.get<long long>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw std::invalid_argument("config: " + name_ + "." + key + " must be a string");
    return v.get<std::string>();
  }

  const json* raw(const std::string& key) {
    used_.insert(key);
    return node_.contains(key) ? &node_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items())
      if (!used_.count(key)) throw std::invalid_argument("config: unknown key '" + name_ + "." + key + "'");
  }

 private:
  std::string name_;
  json node_;
  std::set<std::string> used_;
};

std::string describe(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

json base_config(const std::string& name) {
  return json{{"name", name},
              {"physics", {{"epsilon", 0.5}, {"force", 0.2}, {"d", 4.0}, {"band", {{"kappa", 1.0}}}}},
              {"grid", {{"x_min", -192.0}, {"x_max", 64.0}, {"n_points", 4096}}},
              {"time",
               {{"t_max", 4 * 2 * std::numbers::pi / (0.2 * 4.0)},
                {"n_records", 201},
                {"engine", "characteristics"},
                {"dt", 0.0}}},
              {"initial", {{"kind", "gaussian"}, {"width", 5.0}, {"center", 0.0}}},
              {"output", {{"formats", {"csv", "density", "heatmap"}}, {"heatmap_scale", "frame"}}}};
}

}  // namespace

BandDispersion ScenarioConfig::band() const {
  if (!coefficients.empty()) return BandDispersion(lattice_period, coefficients);
  return BandDispersion::sinusoidal(kappa, lattice_period);
}

std::vector<double> ScenarioConfig::record_times() const {
  std::vector<double> times;
  if (n_records == 1) return {t_max};
  for (int k = 0; k < n_records; ++k) times.push_back(t_max * double(k) / double(n_records - 1));
  return times;
}

ScenarioConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  static const std::set<std::string> sections{"name", "physics", "grid", "time", "initial", "output"};
  for (const auto& [key, value] : j.items())
    if (!sections.count(key)) throw std::invalid_argument("config: unknown section '" + key + "'");

  ScenarioConfig c;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw std::invalid_argument("config: name must be a string");
    c.name = j.at("name").get<std::string>();
  }

  Section physics(j, "physics");
  c.epsilon = physics.number("epsilon", c.epsilon);
  c.force = physics.number("force", c.force);
  c.lattice_period = physics.number("d", c.lattice_period);
  if (const json* band = physics.raw("band")) {
    Section b(json{{"band", *band}}, "band");
    c.kappa = b.number("kappa", 0.0);
    if (const json* list = b.raw("coefficients")) {
      if (!list->is_array()) throw std::invalid_argument("config: band.coefficients must be a list of [n, re, im]");
      for (const json& entry : *list) {
        if (!entry.is_array() || entry.size() < 2 || entry.size() > 3 || !entry[0].is_number_integer())
          throw std::invalid_argument("config: band coefficient entries are [n, re] or [n, re, im]");
        const double im = entry.size() == 3 ? entry[2].get<double>() : 0.0;
        c.coefficients[entry[0].get<int>()] = Complex(entry[1].get<double>(), im);
      }
    }
    b.finish();
    if (c.kappa != 0 && !c.coefficients.empty())
      throw std::invalid_argument("config: give either band.kappa or band.coefficients, not both");
  }
  physics.finish();

  Section grid(j, "grid");
  c.x_min = grid.number("x_min", c.x_min);
  c.x_max = grid.number("x_max", c.x_max);
  c.n_points = grid.integer("n_points", c.n_points);
  grid.finish();

  Section time(j, "time");
  c.t_max = time.number("t_max", c.t_max);
  c.n_records = int(time.integer("n_records", c.n_records));
  c.engine = parse_engine(time.text("engine", std::string(to_string(c.engine))));
  c.dt = time.number("dt", c.dt);
  time.finish();

  Section initial(j, "initial");
  c.initial.kind = parse_initial_kind(initial.text("kind", std::string(to_string(c.initial.kind))));
  c.initial.width = initial.number("width", c.initial.width);
  c.initial.apodization = initial.number("apodization", c.initial.apodization);
  c.initial.center = initial.number("center", c.initial.center);
  c.initial.edge_taper = initial.number("edge_taper", c.initial.edge_taper);
  initial.finish();

  Section output(j, "output");
  c.output_directory = output.text("directory", "");
  if (const json* formats = output.raw("formats")) {
    if (!formats->is_array()) throw std::invalid_argument("config: output.formats must be a list");
    c.formats.clear();
    for (const json& f : *formats) c.formats.push_back(f.get<std::string>());
  }
  const std::string scale = output.text("heatmap_scale", "frame");
  if (scale == "frame")
    c.heatmap_scale = HeatmapScale::per_frame;
  else if (scale == "global")
    c.heatmap_scale = HeatmapScale::global;
  else
    throw std::invalid_argument("config: output.heatmap_scale must be 'frame' or 'global'");
  if (const json* window = output.raw("x_window")) {
    if (!window->is_array() || window->size() != 2)
      throw std::invalid_argument("config: output.x_window must be [lo, hi]");
    c.x_window = std::make_pair((*window)[0].get<double>(), (*window)[1].get<double>());
  }
  output.finish();

  validate_config(c);
  return c;
}

json config_to_json(const ScenarioConfig& c) {
  json band;
  if (c.coefficients.empty()) {
    band["kappa"] = c.kappa;
  } else {
    band["coefficients"] = json::array();
    for (const auto& [n, value] : c.coefficients)
      band["coefficients"].push_back({n, value.real(), value.imag()});
  }
  json j{{"name", c.name},
         {"physics", {{"epsilon", c.epsilon}, {"force", c.force}, {"d", c.lattice_period}, {"band", band}}},
         {"grid", {{"x_min", c.x_min}, {"x_max", c.x_max}, {"n_points", c.n_points}}},
         {"time",
          {{"t_max", c.t_max}, {"n_records", c.n_records}, {"engine", to_string(c.engine)}, {"dt", c.dt}}},
         {"initial",
          {{"kind", to_string(c.initial.kind)},
           {"width", c.initial.width},
           {"apodization", c.initial.apodization},
           {"center", c.initial.center},
           {"edge_taper", c.initial.edge_taper}}},
         {"output",
          {{"directory", c.output_directory},
           {"formats", c.formats},
           {"heatmap_scale", c.heatmap_scale == HeatmapScale::per_frame ? "frame" : "global"}}}};
  if (c.x_window) j["output"]["x_window"] = {c.x_window->first, c.x_window->second};
  return j;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void validate_config(const ScenarioConfig& c) {
  const PhysicalParams params = c.params();  // checks eps, F, d
  (void)c.band();
  const SpatialGrid grid = c.grid();
  if (!(c.t_max >= 0)) throw std::invalid_argument("config: time.t_max must be >= 0");
  if (c.n_records < 1) throw std::invalid_argument("config: time.n_records must be >= 1");
  if (!(c.dt >= 0)) throw std::invalid_argument("config: time.dt must be >= 0");

  const bool eps_zero = params.epsilon() == 0;
  if (eps_zero && (c.engine == Engine::replica || c.engine == Engine::kernel_quadrature))
    throw std::invalid_argument("config: engine '" + std::string(to_string(c.engine)) +
                                "' needs epsilon > 0; use characteristics, splitstep or eps0_map");
  if (!eps_zero && c.engine == Engine::eps0_map)
    throw std::invalid_argument("config: engine 'eps0_map' needs epsilon = 0");
  if (c.engine == Engine::replica || c.engine == Engine::eps0_map) {
    const auto steps = grid.steps_in(c.lattice_period);
    if (!steps || *steps <= 0)
      throw std::invalid_argument("config: engine '" + std::string(to_string(c.engine)) +
                                  "' needs d/dx to be an integer, but d = " + describe(c.lattice_period) +
                                  " and dx = " + describe(grid.dx()) + "; adjust grid.n_points or the box");
  }
  if (eps_zero && c.initial.kind != InitialKind::gaussian)
    throw std::invalid_argument("config: Airy initial states need epsilon > 0");

  for (const auto& f : c.formats)
    if (f != "csv" && f != "density" && f != "heatmap")
      throw std::invalid_argument("config: unknown output format '" + f + "' (csv, density, heatmap)");
  if (c.x_window && !(c.x_window->second > c.x_window->first))
    throw std::invalid_argument("config: output.x_window needs lo < hi");
  if (c.x_window && (c.x_window->first >= grid.x_max() || c.x_window->second <= grid.x_min()))
    throw std::invalid_argument("config: output.x_window lies outside the grid");
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("override '" + assignment + "' is not of the form section.key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json* node = &j;
  std::stringstream parts(path);
  std::string part;
  std::vector<std::string> keys;
  while (std::getline(parts, part, '.')) keys.push_back(part);
  for (std::size_t k = 0; k + 1 < keys.size(); ++k) {
    json& child = (*node)[keys[k]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) throw std::invalid_argument("override '" + path + "': '" + keys[k] + "' is not a section");
    node = &child;
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  (*node)[keys.back()] = value;
}

std::vector<json> figure_preset(int figure) {
  const double bloch = 2 * std::numbers::pi / (0.2 * 4.0);
  switch (figure) {
    case 1: {
      json j = base_config("figure1");
      j["physics"]["band"] = {{"kappa", 0.0}};
      return {j};
    }
    case 2: {
      json j = base_config("figure2");
      j["physics"]["epsilon"] = 0.0;
      j["grid"] = {{"x_min", -128.0}, {"x_max", 128.0}, {"n_points", 4096}};
      j["time"]["engine"] = "eps0_map";
      return {j};
    }
    case 3: {
      json j = base_config("figure3");
      j["time"]["engine"] = "replica";
      return {j};
    }
    case 4: {
      std::vector<json> runs;
      json ideal = base_config("figure4_ideal");
      ideal["grid"] = {{"x_min", -1024.0}, {"x_max", 1024.0}, {"n_points", 32768}};
      ideal["initial"] = {{"kind", "airy_ideal"}, {"edge_taper", 0.05}};
      ideal["output"]["x_window"] = {-150.0, 50.0};
      runs.push_back(ideal);
      // dx = 1/16, span the next power of two above a ln(1e10) + x_max; the right
      // edge sits clear of the outer 5% used by the leak monitor
      for (auto [a, points, x_max] : {std::tuple{300, 131072, 512.0}, std::tuple{100, 65536, 256.0},
                                      std::tuple{50, 32768, 256.0}}) {
        json run = base_config("figure4_a" + std::to_string(a));
        run["grid"] = {{"x_min", x_max - points / 16.0}, {"x_max", x_max}, {"n_points", points}};
        run["initial"] = {{"kind", "airy_apodized"}, {"apodization", double(a)}};
        run["output"]["x_window"] = {-150.0, 50.0};
        runs.push_back(run);
      }
      for (json& run : runs) run["time"]["t_max"] = 4 * bloch;
      return runs;
    }
    default:
      throw std::invalid_argument("figure must be 1, 2, 3 or 4");
  }
}

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv("WSTARK_OUTPUT_DIR"); env && *env) return env;
  return "output";
}

ScenarioResult run_scenario(const ScenarioConfig& c) {
  validate_config(c);
  const PhysicalParams params = c.params();
  const BandDispersion band = c.band();
  const SpatialGrid grid = c.grid();
  const WaveFunction psi0 = build_initial(c.initial, grid, params);
  const std::vector<double> times = c.record_times();

  Eigen::Index first = 0, last = grid.size();
  if (c.x_window) {
    first = std::max<Eigen::Index>(0, Eigen::Index(std::ceil((c.x_window->first - grid.x_min()) / grid.dx())));
    last = std::min<Eigen::Index>(grid.size(), Eigen::Index(std::floor((c.x_window->second - grid.x_min()) / grid.dx())) + 1);
    if (last <= first) throw std::invalid_argument("output.x_window does not overlap the grid");
  }

  ScenarioResult result;
  result.record.engine = std::string(to_string(c.engine));
  result.record.scenario = c.name;
  result.window_x_min = grid.x(first);
  result.density.resize(Eigen::Index(times.size()), last - first);

  EvolutionSpec spec{params, band, c.engine, c.dt, times};
  Eigen::Index row = 0;
  spec.observer = [&](double t, const WaveFunction& psi) {
    append_sample(result.record, psi0, t, psi);
    result.density.row(row++) = psi.amplitudes.segment(first, last - first).cwiseAbs2().transpose();
  };
  TimeSeries series;
  try {
    series = evolve(spec, psi0);
  } catch (const std::exception& e) {
    throw Error("scenario '" + c.name + "' (" + std::string(to_string(c.engine)) + "): " + e.what());
  }
  result.warnings = series.warnings;
  result.max_leak = series.max_leak;

  const std::filesystem::path dir =
      c.output_directory.empty() ? default_output_root() / c.name : std::filesystem::path(c.output_directory);
  auto wants = [&](const char* f) { return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end(); };
  if (wants("csv")) {
    result.files.push_back(dir / "trajectory.csv");
    write_trajectory_csv(result.files.back(), result.record);
  }
  if (wants("density")) {
    std::map<std::string, std::string> meta{
        {"scenario", c.name},
        {"engine", std::string(to_string(c.engine))},
        {"x_min", describe(result.window_x_min)},
        {"dx", describe(grid.dx())},
        {"t_first", describe(times.front())},
        {"t_last", describe(times.back())},
        {"epsilon", describe(c.epsilon)},
        {"force", describe(c.force)},
        {"d", describe(c.lattice_period)},
        {"band", config_to_json(c)["physics"]["band"].dump()},
        {"initial", std::string(to_string(c.initial.kind))}};
    result.files.push_back(dir / "density.bin");
    write_density(result.files.back(), result.density, meta);
    result.files.push_back(density_sidecar(result.files.back()));
  }
  if (wants("heatmap")) {
    result.files.push_back(dir / "heatmap.pgm");
    write_heatmap_pgm(result.files.back(), result.density, c.heatmap_scale == HeatmapScale::per_frame);
  }
  return result;
}

}  // namespace wstark
