#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "asysa/workload.hpp"

namespace asysa::cli {

struct DataSourceConfig {
  enum class Kind { Synthetic, Trace };
  Kind kind = Kind::Synthetic;
  double zero_fraction = 0.5;         // synthetic only
  std::optional<std::uint64_t> seed;  // synthetic only; wins over --seed
  std::string path;                   // trace only
};

struct LayerConfig {
  LayerSpec spec;
  DataSourceConfig data;
};

struct ArraySection {
  int rows = 32;
  int cols = 32;
  unsigned input_bits = 16;
  unsigned accumulator_bits = 37;  // defaults to the required width
};

struct FloorplanSection {
  double area = 1.0;
  std::optional<double> ratio_override;
  bool ratio_rounding = false;
  double ratio_clamp = 64.0;  // stands in for the ratio when one bus is silent
};

struct PowerSection {
  double interconnect_fraction = 0.231;
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats = {"json", "csv", "svg", "text"};

  bool wants(const std::string& format) const;
};

struct ActivitySection {
  enum class Kind { None, Inline, File };
  Kind kind = Kind::None;
  double a_h = 0.0;
  double a_v = 0.0;
  std::string file;
};

struct SweepSection {
  bool present = false;
  std::string axis;  // ratio | zero_fraction | bus_width
  std::vector<double> grid;
};

struct ReportSection {
  std::vector<std::string> inputs;  // simulate JSONs; default <out>/simulate.json
};

/// Fully validated run configuration. Loading either succeeds with every
/// field checked (ranges, cross-field consistency, no unknown keys) or
/// throws ConfigError; nothing is applied partially.
struct RunConfig {
  ArraySection array;
  std::vector<LayerConfig> layers;
  FloorplanSection floorplan;
  PowerSection power;
  OutputSection output;
  ActivitySection activity;
  SweepSection sweep;
  ReportSection report;
};

RunConfig load_run_config(const std::filesystem::path& path);

/// Schema-level validation of an already parsed config; exposed so tests
/// can probe rejection rules without touching the filesystem.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

}  // namespace asysa::cli
