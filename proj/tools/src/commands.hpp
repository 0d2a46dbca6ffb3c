#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asysa/sim.hpp"
#include "asysa/workload.hpp"
#include "run_config.hpp"

namespace asysa::cli {

/// Command-line switches layered on top of the config file.
struct Overrides {
  std::optional<std::string> out_dir;  // --out
  std::optional<std::uint64_t> seed;   // --seed
  bool ratio_round = false;            // --ratio-round
};

/// Base seed used when neither --seed nor per-layer seeds are given.
inline constexpr std::uint64_t kDefaultSeed = 1;

RunConfig apply_overrides(RunConfig cfg, const Overrides& overrides);

/// One simulated layer; `ok` false means a data error, recorded so the
/// remaining layers still report.
struct LayerRun {
  std::string name;
  bool ok = false;
  std::string error;
  GemmSpec gemm{0, 0, 0};
  std::uint64_t cycles = 0;
  BusActivity activity;
  double a_h = 0.0;
  double a_v = 0.0;
};

struct SimulateOutcome {
  std::vector<LayerRun> layers;
  BusActivity aggregate;  // merged over successful layers
  std::uint64_t cycles = 0;
  bool all_ok = true;
};

/// Run every layer of the workload (in parallel up to ASYSA_THREADS,
/// results always assembled in layer order). Data problems are isolated
/// per layer; a functional mismatch between the array and the reference
/// product aborts with FunctionalMismatchError.
SimulateOutcome simulate_workload(const RunConfig& cfg, std::uint64_t base_seed);

/// Aspect ratio selected for a floorplan, after applying the override,
/// the silent-bus clamp and optional one-decimal rounding.
struct RatioChoice {
  double raw = 1.0;       // analytic optimum (or override) before rounding
  double selected = 1.0;  // value the geometry is built from
  bool clamped = false;
  std::string source;  // analytic | override | clamped_wide | clamped_tall | silent
};

RatioChoice resolve_ratio(const ArraySection& array, const FloorplanSection& floorplan,
                          double a_h, double a_v);

int cmd_simulate(const RunConfig& cfg, std::uint64_t base_seed);
int cmd_optimize(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg, std::uint64_t base_seed);
int cmd_report(const RunConfig& cfg);

}  // namespace asysa::cli
