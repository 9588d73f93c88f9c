#pragma once

// Declarative run configurations and the scenario runner behind the command
// line. A config names one scenario, the chain, exactly one environment
// source (inline model or rate table), and the numerical knobs; the runner
// emits the scenario's CSV plus a manifest.json recording the resolved
// configuration and rates, so every output is reproducible from its manifest.

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cascade/rates.hpp"
#include "cascade/scan.hpp"
#include "cascade/types.hpp"

namespace cascade {

enum class ScenarioKind {
  populations,
  efficiency_dynamics,
  bias_compare,
  step_scan,
  length_scan,
  gamma12_scan,
  phi_scan,
};

std::string to_string(ScenarioKind kind);
bool is_scan_scenario(ScenarioKind kind);

struct EnvironmentChoice {
  // exactly one of model / rate_table is set; mode accompanies a model
  std::optional<std::variant<QuadratureModel, SppChainModel>> model;
  CouplingMode mode = CouplingMode::unidirectional;
  std::optional<std::filesystem::path> rate_table;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::populations;
  ChainSpec chain;
  EnvironmentChoice environment;
  std::string initial_state;  // empty = all ground
  // Drives: when unset, an inline model defaults to 1.5 each and a rate
  // table keeps the values from its header.
  std::optional<double> gamma_in;
  std::optional<double> gamma_out;
  double t_end = 15.0;
  int samples = 601;
  std::optional<std::vector<double>> grid;  // scan grid override
  std::filesystem::path output = ".";
  bool drop_hamiltonian = false;  // skip the -i[H, rho] rotation
};

// Parses and validates a JSON config. Errors are ConfigError/ParseError with
// messages naming the offending field path.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;  // overrides config.output
  bool quiet = false;
};

// The concrete rate set the config describes (drives resolved).
RateSet resolve_environment(const ScenarioConfig& config);

// Executes the scenario and writes its CSV artifacts plus manifest.json into
// the output directory. Prints one note per file written unless quiet.
void run_scenario(const ScenarioConfig& config, const RunOptions& options);

// Dry run for `validate`: resolves the environment and returns the report
// lines (mode summary and rate diagnostics). Throws on config errors.
std::vector<std::string> validate_scenario(const ScenarioConfig& config);

}  // namespace cascade
