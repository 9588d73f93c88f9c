// Command-line front end: simulate / validate / scan over JSON scenario
// configs. Exit codes: 0 ok, 1 numerical failure, 2 config error.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cascade/scenario.hpp"
#include "cascade/types.hpp"
#include "cascade/version.hpp"

namespace {

struct SubcommandArgs {
  std::string config_path;
  std::string output_dir;  // empty means keep the config's output setting
  bool quiet = false;
};

void check_subcommand_match(cascade::ScenarioKind kind, bool scan_command) {
  const bool scan_config = cascade::is_scan_scenario(kind);
  if (scan_command && !scan_config)
    throw cascade::ConfigError("scenario " + cascade::to_string(kind) +
                               " runs under simulate, not scan");
  if (!scan_command && scan_config)
    throw cascade::ConfigError("scenario " + cascade::to_string(kind) +
                               " runs under scan, not simulate");
}

void add_run_options(CLI::App* command, SubcommandArgs& args) {
  command->add_option("config", args.config_path, "JSON scenario config")->required();
  command->add_option("--output-dir", args.output_dir,
                      "Write outputs here instead of the config's output directory");
  command->add_flag("--quiet", args.quiet, "Suppress the per-file notes");
}

int run(int argc, char** argv) {
  CLI::App app{"Energy transport in cascaded chains of two-level emitters"};
  app.set_version_flag("--version", std::string(cascade::artifact_name) + " " +
                                        cascade::artifact_version);
  app.require_subcommand(1);

  SubcommandArgs simulate_args;
  SubcommandArgs scan_args;
  std::string validate_path;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a trajectory or steady-state scenario");
  add_run_options(simulate, simulate_args);

  CLI::App* validate =
      app.add_subcommand("validate", "Dry-run a config: schema check plus rate diagnostics");
  validate->add_option("config", validate_path, "JSON scenario config")->required();

  CLI::App* scan = app.add_subcommand("scan", "Run a parameter sweep scenario");
  add_run_options(scan, scan_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& err) {
    return app.exit(err);  // --help and --version land here
  } catch (const CLI::ParseError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  }

  try {
    if (validate->parsed()) {
      const cascade::ScenarioConfig config = cascade::load_scenario_config(validate_path);
      for (const std::string& line : cascade::validate_scenario(config))
        std::cout << line << '\n';
      return 0;
    }

    const bool scan_command = scan->parsed();
    const SubcommandArgs& args = scan_command ? scan_args : simulate_args;
    const cascade::ScenarioConfig config = cascade::load_scenario_config(args.config_path);
    check_subcommand_match(config.scenario, scan_command);

    cascade::RunOptions options;
    if (!args.output_dir.empty()) options.output_dir = args.output_dir;
    options.quiet = args.quiet;
    try {
      cascade::run_scenario(config, options);
    } catch (const cascade::NumericsError& err) {
      throw cascade::NumericsError("scenario " + cascade::to_string(config.scenario) + ": " +
                                   err.what());
    }
    return 0;
  } catch (const cascade::NumericsError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 1;
  } catch (const cascade::ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
