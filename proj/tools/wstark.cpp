#include "wstark/scenario.hpp"
#include "wstark/validation.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kValidationFailure = 2;

void report(const wstark::ScenarioConfig& config, const wstark::ScenarioResult& result) {
  std::cout << config.name << ": " << result.record.times.size() << " records, max leak "
            << result.max_leak << "\n";
  for (const auto& w : result.warnings) std::cout << "  warning: " << w << "\n";
  for (const auto& f : result.files) std::cout << "  wrote " << f.string() << "\n";
}

int simulate(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw wstark::Error("cannot open config " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  for (const auto& o : overrides) wstark::apply_override(j, o);
  const auto config = wstark::config_from_json(j);
  report(config, wstark::run_scenario(config));
  return kOk;
}

int figure(int which, const std::string& out, const std::vector<std::string>& overrides) {
  for (nlohmann::json j : wstark::figure_preset(which)) {
    for (const auto& o : overrides) wstark::apply_override(j, o);
    if (!out.empty()) {
      const auto name = j["name"].get<std::string>();
      j["output"]["directory"] = (std::filesystem::path(out) / name).string();
    }
    const auto config = wstark::config_from_json(j);
    report(config, wstark::run_scenario(config));
  }
  return kOk;
}

int validate(const std::vector<std::string>& tolerances, const std::vector<std::string>& only,
             const std::string& inject) {
  wstark::ValidationOptions options;
  for (const auto& t : tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--tol expects name=value, got '" + t + "'");
    options.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
  }
  options.only = only;
  if (inject == "force-sign-flip") options.flip_force_sign = true;
  else if (!inject.empty()) throw std::invalid_argument("unknown fault '" + inject + "'");

  const auto result = wstark::run_validation(options, [](const wstark::CheckResult& c) {
    std::cout << wstark::format_check(c) << std::endl;
  });
  const bool ok = result.all_passed();
  std::cout << (ok ? "all checks passed" : "validation FAILED") << "\n";
  return ok ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet dynamics under eps p^2 + T(p) + F x"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sim_overrides;
  auto* sim = app.add_subcommand("simulate", "Run a scenario from a JSON config");
  sim->add_option("--config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  sim->add_option("--set", sim_overrides, "Override a key, e.g. time.t_max=20");

  int which = 0;
  std::string out;
  std::vector<std::string> fig_overrides;
  auto* fig = app.add_subcommand("figure", "Run a built-in figure preset");
  fig->add_option("number", which, "Figure 1-4")->required()->check(CLI::Range(1, 4));
  fig->add_option("--out", out, "Output root (default $WSTARK_OUTPUT_DIR or ./output)");
  fig->add_option("--set", fig_overrides, "Override a key, e.g. grid.n_points=8192");

  std::vector<std::string> tolerances, only;
  std::string inject;
  auto* val = app.add_subcommand("validate", "Run the self-check suite");
  val->add_option("--tol", tolerances, "Tolerance override name=value");
  val->add_option("--only", only, "Run only the named checks");
  val->add_option("--inject", inject, "Fault injection (force-sign-flip)");
  auto* list = val->add_flag("--list", "List checks and default tolerances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(config_path, sim_overrides);
    if (*fig) return figure(which, out, fig_overrides);
    if (list->count() > 0) {
      for (const auto& [name, tol] : wstark::validation_checks()) std::printf("%-32s %12.4e\n", name.c_str(), tol);
      return kOk;
    }
    return validate(tolerances, only, inject);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
