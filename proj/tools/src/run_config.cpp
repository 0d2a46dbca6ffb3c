#include "run_config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include <json.hpp>

#include "asysa/errors.hpp"
#include "asysa/file_util.hpp"
#include "asysa/model.hpp"

namespace asysa::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* key) {
          return item.key() == key;
        }) == allowed.end()) {
      fail(where, "unknown key \"" + item.key() + "\"");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const json* value = find(obj, key);
  if (value == nullptr) {
    fail(where, "missing required key \"" + std::string(key) + "\"");
  }
  return *value;
}

const json& require_object(const json& value, const std::string& where) {
  if (!value.is_object()) {
    fail(where, "expected an object");
  }
  return value;
}

std::int64_t get_integer(const json& value, const std::string& where, std::int64_t lo,
                         std::int64_t hi) {
  if (!value.is_number_integer()) {
    fail(where, "expected an integer");
  }
  const std::int64_t v = value.get<std::int64_t>();
  if (v < lo || v > hi) {
    fail(where, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  return v;
}

double get_number(const json& value, const std::string& where, double lo, double hi) {
  if (!value.is_number()) {
    fail(where, "expected a number");
  }
  const double v = value.get<double>();
  if (!std::isfinite(v) || v < lo || v > hi) {
    fail(where, "value " + value.dump() + " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  return v;
}

bool get_bool(const json& value, const std::string& where) {
  if (!value.is_boolean()) {
    fail(where, "expected a boolean");
  }
  return value.get<bool>();
}

std::string get_string(const json& value, const std::string& where) {
  if (!value.is_string() || value.get<std::string>().empty()) {
    fail(where, "expected a non-empty string");
  }
  return value.get<std::string>();
}

unsigned ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0u : unsigned(std::bit_width(n - 1));
}

ArraySection parse_array(const json& obj) {
  const std::string where = "array";
  check_keys(obj, where, {"rows", "cols", "input_bits", "accumulator_bits"});
  ArraySection a;
  a.rows = int(get_integer(require(obj, "rows", where), where + ".rows", 1, 1024));
  a.cols = int(get_integer(require(obj, "cols", where), where + ".cols", 1, 1024));
  a.input_bits =
      unsigned(get_integer(require(obj, "input_bits", where), where + ".input_bits", 2, 24));
  const unsigned required = required_accumulator_width(a.input_bits, unsigned(a.rows));
  if (const json* acc = find(obj, "accumulator_bits")) {
    a.accumulator_bits =
        unsigned(get_integer(*acc, where + ".accumulator_bits", 1, 62));
    if (a.accumulator_bits < required) {
      fail(where + ".accumulator_bits",
           std::to_string(a.accumulator_bits) + " bits cannot hold a " + std::to_string(a.rows) +
               "-row dot product of " + std::to_string(a.input_bits) + "-bit operands; " +
               std::to_string(required) + " are required");
    }
  } else {
    a.accumulator_bits = required;
  }
  return a;
}

DataSourceConfig parse_data_source(const json& obj, const std::string& where) {
  DataSourceConfig data;
  const std::string source = get_string(require(obj, "source", where), where + ".source");
  if (source == "synthetic") {
    check_keys(obj, where, {"source", "zero_fraction", "seed"});
    data.kind = DataSourceConfig::Kind::Synthetic;
    data.zero_fraction =
        get_number(require(obj, "zero_fraction", where), where + ".zero_fraction", 0.0, 1.0);
    if (const json* seed = find(obj, "seed")) {
      if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
        fail(where + ".seed", "expected an integer");
      }
      data.seed = seed->get<std::uint64_t>();
    }
  } else if (source == "trace") {
    check_keys(obj, where, {"source", "path"});
    data.kind = DataSourceConfig::Kind::Trace;
    data.path = get_string(require(obj, "path", where), where + ".path");
  } else {
    fail(where + ".source", "expected \"synthetic\" or \"trace\", got \"" + source + "\"");
  }
  return data;
}

std::vector<LayerConfig> parse_layers(const json& arr, const ArraySection& array) {
  if (!arr.is_array() || arr.empty()) {
    fail("layers", "expected a non-empty array");
  }
  std::vector<LayerConfig> layers;
  std::set<std::string> names;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "layers[" + std::to_string(i) + "]";
    const json& obj = require_object(arr[i], where);
    check_keys(obj, where,
               {"name", "kernel", "out_height", "out_width", "in_channels", "out_channels",
                "data"});
    const std::string name = get_string(require(obj, "name", where), where + ".name");
    if (!names.insert(name).second) {
      fail(where + ".name", "duplicate layer name \"" + name + "\"");
    }
    LayerSpec spec(
        name, int(get_integer(require(obj, "kernel", where), where + ".kernel", 1, 32)),
        int(get_integer(require(obj, "out_height", where), where + ".out_height", 1, 4096)),
        int(get_integer(require(obj, "out_width", where), where + ".out_width", 1, 4096)),
        int(get_integer(require(obj, "in_channels", where), where + ".in_channels", 1, 65536)),
        int(get_integer(require(obj, "out_channels", where), where + ".out_channels", 1, 65536)));
    const GemmSpec gemm = lower_conv_to_gemm(spec);
    if (gemm.m_rows * gemm.k_depth > (std::uint64_t(1) << 26)) {
      fail(where, "lowered layer is too large: " + std::to_string(gemm.m_rows) + "x" +
                      std::to_string(gemm.k_depth) + " exceeds 2^26 elements");
    }
    const unsigned out_width =
        2 * array.input_bits +
        ceil_log2(std::max<std::uint64_t>(std::uint64_t(array.rows), gemm.k_depth));
    if (out_width > 63) {
      fail(where, "accumulating " + std::to_string(gemm.k_depth) + " products of " +
                      std::to_string(array.input_bits) + "-bit operands needs " +
                      std::to_string(out_width) + " bits; at most 63 are supported");
    }
    layers.push_back(LayerConfig{std::move(spec),
                                 parse_data_source(require_object(require(obj, "data", where),
                                                                  where + ".data"),
                                                   where + ".data")});
  }
  return layers;
}

FloorplanSection parse_floorplan(const json& obj) {
  const std::string where = "floorplan";
  check_keys(obj, where, {"area", "ratio_override", "ratio_rounding", "ratio_clamp"});
  FloorplanSection f;
  if (const json* area = find(obj, "area")) {
    f.area = get_number(*area, where + ".area", 1e-12, 1e12);
  }
  if (const json* ratio = find(obj, "ratio_override")) {
    f.ratio_override = get_number(*ratio, where + ".ratio_override", 1e-6, 1e6);
  }
  if (const json* rounding = find(obj, "ratio_rounding")) {
    f.ratio_rounding = get_bool(*rounding, where + ".ratio_rounding");
  }
  if (const json* clamp = find(obj, "ratio_clamp")) {
    f.ratio_clamp = get_number(*clamp, where + ".ratio_clamp", 1.0, 1e6);
  }
  return f;
}

PowerSection parse_power(const json& obj) {
  const std::string where = "power";
  check_keys(obj, where, {"interconnect_fraction"});
  PowerSection p;
  if (const json* fraction = find(obj, "interconnect_fraction")) {
    p.interconnect_fraction = get_number(*fraction, where + ".interconnect_fraction", 0.0, 1.0);
    if (p.interconnect_fraction <= 0.0 || p.interconnect_fraction >= 1.0) {
      fail(where + ".interconnect_fraction", "must lie strictly inside (0, 1)");
    }
  }
  return p;
}

OutputSection parse_output(const json& obj) {
  const std::string where = "output";
  check_keys(obj, where, {"directory", "formats"});
  OutputSection o;
  if (const json* dir = find(obj, "directory")) {
    o.directory = get_string(*dir, where + ".directory");
  }
  if (const json* formats = find(obj, "formats")) {
    if (!formats->is_array() || formats->empty()) {
      fail(where + ".formats", "expected a non-empty array");
    }
    o.formats.clear();
    for (const json& entry : *formats) {
      const std::string format = get_string(entry, where + ".formats");
      if (format != "json" && format != "csv" && format != "svg" && format != "text") {
        fail(where + ".formats", "unknown format \"" + format + "\"");
      }
      if (std::find(o.formats.begin(), o.formats.end(), format) != o.formats.end()) {
        fail(where + ".formats", "duplicate format \"" + format + "\"");
      }
      o.formats.push_back(format);
    }
  }
  return o;
}

ActivitySection parse_activity(const json& obj) {
  const std::string where = "activity";
  check_keys(obj, where, {"a_h", "a_v", "file"});
  ActivitySection act;
  const json* a_h = find(obj, "a_h");
  const json* a_v = find(obj, "a_v");
  const json* file = find(obj, "file");
  if (file != nullptr && (a_h != nullptr || a_v != nullptr)) {
    fail(where, "give either a_h/a_v or file, not both");
  }
  if (file != nullptr) {
    act.kind = ActivitySection::Kind::File;
    act.file = get_string(*file, where + ".file");
  } else if (a_h != nullptr && a_v != nullptr) {
    act.kind = ActivitySection::Kind::Inline;
    act.a_h = get_number(*a_h, where + ".a_h", 0.0, 1.0);
    act.a_v = get_number(*a_v, where + ".a_v", 0.0, 1.0);
  } else {
    fail(where, "needs both a_h and a_v, or a file");
  }
  return act;
}

SweepSection parse_sweep(const json& obj) {
  const std::string where = "sweep";
  check_keys(obj, where, {"axis", "grid"});
  SweepSection s;
  s.present = true;
  s.axis = get_string(require(obj, "axis", where), where + ".axis");
  if (s.axis != "ratio" && s.axis != "zero_fraction" && s.axis != "bus_width") {
    throw InvalidAxisError("config: sweep.axis: expected \"ratio\", \"zero_fraction\" or "
                           "\"bus_width\", got \"" +
                           s.axis + "\"");
  }
  const json& grid = require(obj, "grid", where);
  if (!grid.is_array() || grid.empty()) {
    fail(where + ".grid", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::string at = where + ".grid[" + std::to_string(i) + "]";
    if (s.axis == "ratio") {
      s.grid.push_back(get_number(grid[i], at, 1e-6, 1e6));
    } else if (s.axis == "zero_fraction") {
      s.grid.push_back(get_number(grid[i], at, 0.0, 1.0));
    } else {
      s.grid.push_back(double(get_integer(grid[i], at, 2, 24)));
    }
  }
  return s;
}

ReportSection parse_report(const json& obj) {
  const std::string where = "report";
  check_keys(obj, where, {"inputs"});
  ReportSection r;
  const json& inputs = require(obj, "inputs", where);
  if (!inputs.is_array() || inputs.empty()) {
    fail(where + ".inputs", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    r.inputs.push_back(get_string(inputs[i], where + ".inputs[" + std::to_string(i) + "]"));
  }
  return r;
}

}  // namespace

bool OutputSection::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("config " + origin + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config " + origin + ": top level must be an object");
  }
  check_keys(root, "top level",
             {"version", "array", "layers", "floorplan", "power", "output", "activity", "sweep",
              "report"});
  const std::int64_t version = get_integer(require(root, "version", "top level"), "version", 1, 1);
  (void)version;

  RunConfig cfg;
  cfg.array = parse_array(require_object(require(root, "array", "top level"), "array"));
  if (const json* layers = find(root, "layers")) {
    cfg.layers = parse_layers(*layers, cfg.array);
  }
  if (const json* floorplan = find(root, "floorplan")) {
    cfg.floorplan = parse_floorplan(require_object(*floorplan, "floorplan"));
  }
  if (const json* power = find(root, "power")) {
    cfg.power = parse_power(require_object(*power, "power"));
  }
  if (const json* output = find(root, "output")) {
    cfg.output = parse_output(require_object(*output, "output"));
  }
  if (const json* activity = find(root, "activity")) {
    cfg.activity = parse_activity(require_object(*activity, "activity"));
  }
  if (const json* sweep = find(root, "sweep")) {
    cfg.sweep = parse_sweep(require_object(*sweep, "sweep"));
  }
  if (const json* report = find(root, "report")) {
    cfg.report = parse_report(require_object(*report, "report"));
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(text, path.string());
}

}  // namespace asysa::cli
