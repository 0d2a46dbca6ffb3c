#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "asysa/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace asysa::cli {

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  bool out_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool ratio_round = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to the JSON run configuration")
      ->required();
  cmd->add_option("--out", args.out_dir, "Output directory (overrides output.directory)")
      ->each([&args](const std::string&) { args.out_set = true; });
  cmd->add_option("--seed", args.seed, "Base seed for synthetic data generation")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_flag("--ratio-round", args.ratio_round,
                "Round the selected aspect ratio to one decimal");
}

int dispatch(const std::string& command, const CommonArgs& args) {
  Overrides overrides;
  if (args.out_set) {
    overrides.out_dir = args.out_dir;
  }
  if (args.seed_set) {
    overrides.seed = args.seed;
  }
  overrides.ratio_round = args.ratio_round;

  const RunConfig cfg = apply_overrides(load_run_config(args.config_path), overrides);
  const std::uint64_t base_seed = overrides.seed.value_or(kDefaultSeed);

  if (command == "simulate") {
    return cmd_simulate(cfg, base_seed);
  }
  if (command == "optimize") {
    return cmd_optimize(cfg);
  }
  if (command == "sweep") {
    return cmd_sweep(cfg, base_seed);
  }
  return cmd_report(cfg);
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Systolic-array switching-activity simulator and PE floorplan optimizer"};
  app.name("asysa");
  app.require_subcommand(1);

  CommonArgs common;
  for (const char* name : {"optimize", "simulate", "sweep", "report"}) {
    add_common_options(app.add_subcommand(name), common);
  }
  app.get_subcommand("optimize")->description("Compute the energy-optimal PE aspect ratio");
  app.get_subcommand("simulate")->description("Simulate the workload and measure bus activity");
  app.get_subcommand("sweep")->description("Tabulate cost and savings along one axis");
  app.get_subcommand("report")->description("Chart square vs asymmetric energy per layer");

  try {
    std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed args
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), common);
  } catch (const ConfigError& e) {  // includes MissingActivityError, InvalidAxisError
    std::cerr << "asysa: " << e.what() << "\n";
    return 2;
  } catch (const FunctionalMismatchError& e) {
    std::cerr << "asysa: functional check failed: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "asysa: " << e.what() << "\n";
    return 3;
  } catch (const WidthViolationError& e) {
    std::cerr << "asysa: " << e.what() << "\n";
    return 3;
  } catch (const ShapeError& e) {
    std::cerr << "asysa: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "asysa: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "asysa: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace asysa::cli
