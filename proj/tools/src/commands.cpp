#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <thread>

#include <json.hpp>

#include "asysa/errors.hpp"
#include "asysa/file_util.hpp"
#include "asysa/matrix.hpp"
#include "asysa/model.hpp"
#include "asysa/power.hpp"
#include "asysa/trace_io.hpp"
#include "io_util.hpp"
#include "svg_chart.hpp"

namespace asysa::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string percent(double fraction) {
  return fmt_fixed(fraction * 100.0, 2) + "%";
}

ArrayConfig to_array_config(const ArraySection& array) {
  return ArrayConfig(array.rows, array.cols, int(array.input_bits), int(array.accumulator_bits));
}

// ---------------------------------------------------------------- simulate

IntMatrix resolve_input_tensor(const LayerConfig& layer, unsigned input_bits,
                               std::uint64_t activation_seed) {
  const ConvInputShape shape =
      conv_input_shape(layer.spec, 1, (layer.spec.kernel - 1) / 2);
  const std::size_t pixels = std::size_t(shape.height) * std::size_t(shape.width);
  if (layer.data.kind == DataSourceConfig::Kind::Synthetic) {
    return synth_activations(std::size_t(layer.spec.in_channels), pixels,
                             layer.data.zero_fraction, input_bits, activation_seed);
  }
  IntMatrix input = load_trace(layer.data.path);
  if (input.is_signed() || input.width_bits() != input_bits) {
    throw DataError("trace " + layer.data.path + " declares " +
                    (input.is_signed() ? std::string("signed ") : std::string("unsigned ")) +
                    std::to_string(input.width_bits()) + "-bit data, the array streams unsigned " +
                    std::to_string(input_bits) + "-bit inputs");
  }
  if (input.rows() != std::size_t(layer.spec.in_channels) || input.cols() != pixels) {
    throw DataError("trace " + layer.data.path + " is " + std::to_string(input.rows()) + "x" +
                    std::to_string(input.cols()) + ", the layer needs channels x pixels = " +
                    std::to_string(layer.spec.in_channels) + "x" + std::to_string(pixels));
  }
  return input;
}

[[noreturn]] void report_mismatch(const std::string& name, const IntMatrix& got,
                                  const IntMatrix& want) {
  for (std::size_t r = 0; r < want.rows(); ++r) {
    for (std::size_t c = 0; c < want.cols(); ++c) {
      if (got(r, c) != want(r, c)) {
        throw FunctionalMismatchError(
            "layer \"" + name + "\": array output differs from the reference product at (" +
            std::to_string(r) + ", " + std::to_string(c) + "): array " +
            std::to_string(got(r, c)) + ", reference " + std::to_string(want(r, c)));
      }
    }
  }
  throw FunctionalMismatchError("layer \"" + name +
                                "\": outputs differ in shape: array " +
                                std::to_string(got.rows()) + "x" + std::to_string(got.cols()) +
                                ", reference " + std::to_string(want.rows()) + "x" +
                                std::to_string(want.cols()));
}

LayerRun run_layer(const RunConfig& cfg, std::size_t index, std::uint64_t base_seed) {
  const LayerConfig& layer = cfg.layers[index];
  LayerRun run;
  run.name = layer.spec.name;
  run.gemm = lower_conv_to_gemm(layer.spec);
  try {
    const std::uint64_t seed_a = layer.data.seed.has_value()
                                     ? *layer.data.seed
                                     : derived_seed(base_seed, 2 * index);
    const std::uint64_t seed_w = derived_seed(base_seed, 2 * index + 1);
    const IntMatrix input = resolve_input_tensor(layer, cfg.array.input_bits, seed_a);
    const IntMatrix a = im2col(input, layer.spec);
    const IntMatrix w =
        synth_weights(run.gemm.k_depth, run.gemm.n_cols, cfg.array.input_bits, seed_w);
    const ArrayConfig sim_cfg = to_array_config(cfg.array);
    SimResult result = run_ws_matmul(a, w, sim_cfg);
    const IntMatrix reference = reference_matmul(a, w);
    if (!same_values(result.output, reference)) {
      report_mismatch(run.name, result.output, reference);
    }
    const ActivityProfile profile = activity_profile(result, sim_cfg);
    run.cycles = result.cycles;
    run.activity = result.activity;
    run.a_h = profile.a_h;
    run.a_v = profile.a_v;
    run.ok = true;
  } catch (const FunctionalMismatchError&) {
    throw;
  } catch (const std::exception& e) {
    run.ok = false;
    run.error = e.what();
  }
  return run;
}

}  // namespace

RunConfig apply_overrides(RunConfig cfg, const Overrides& overrides) {
  if (overrides.out_dir.has_value()) {
    cfg.output.directory = *overrides.out_dir;
  }
  if (overrides.ratio_round) {
    cfg.floorplan.ratio_rounding = true;
  }
  return cfg;
}

SimulateOutcome simulate_workload(const RunConfig& cfg, std::uint64_t base_seed) {
  if (cfg.layers.empty()) {
    throw ConfigError("config: layers: this command needs at least one layer");
  }
  const std::size_t n = cfg.layers.size();
  SimulateOutcome outcome;
  outcome.layers.resize(n);

  const std::size_t workers = thread_cap(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      outcome.layers[i] = run_layer(cfg, i, base_seed);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> fatal(n);
    auto work = [&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          outcome.layers[i] = run_layer(cfg, i, base_seed);
        } catch (...) {
          fatal[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back(work);
    }
    for (std::thread& t : pool) {
      t.join();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (fatal[i]) {
        std::rethrow_exception(fatal[i]);
      }
    }
  }

  for (const LayerRun& run : outcome.layers) {
    if (run.ok) {
      outcome.aggregate.merge(run.activity);
      outcome.cycles += run.cycles;
    } else {
      outcome.all_ok = false;
    }
  }
  return outcome;
}

RatioChoice resolve_ratio(const ArraySection& array, const FloorplanSection& floorplan,
                          double a_h, double a_v) {
  RatioChoice choice;
  const double load_h = double(array.input_bits) * a_h;
  const double load_v = double(array.accumulator_bits) * a_v;
  if (floorplan.ratio_override.has_value()) {
    choice.raw = *floorplan.ratio_override;
    choice.source = "override";
  } else if (load_h > 0.0 && load_v > 0.0) {
    choice.raw = optimal_aspect_ratio(to_array_config(array), ActivityProfile(a_h, a_v));
    choice.source = "analytic";
  } else if (load_h <= 0.0 && load_v <= 0.0) {
    choice.raw = 1.0;
    choice.source = "silent";
  } else if (load_h <= 0.0) {
    // Horizontal wires never switch, so the cost only falls as the PE gets
    // wider; the clamp stands in for the unbounded optimum.
    choice.raw = floorplan.ratio_clamp;
    choice.clamped = true;
    choice.source = "clamped_wide";
  } else {
    choice.raw = 1.0 / floorplan.ratio_clamp;
    choice.clamped = true;
    choice.source = "clamped_tall";
  }
  choice.selected =
      floorplan.ratio_rounding ? std::max(0.1, round_tenths(choice.raw)) : choice.raw;
  return choice;
}

namespace {

// ------------------------------------------------------------ serialization

ojson array_to_json(const ArraySection& array) {
  ojson j;
  j["rows"] = array.rows;
  j["cols"] = array.cols;
  j["input_bits"] = array.input_bits;
  j["accumulator_bits"] = array.accumulator_bits;
  return j;
}

ojson floorplan_to_json(const FloorplanSection& floorplan) {
  ojson j;
  j["area"] = floorplan.area;
  if (floorplan.ratio_override.has_value()) {
    j["ratio_override"] = *floorplan.ratio_override;
  }
  j["ratio_rounding"] = floorplan.ratio_rounding;
  j["ratio_clamp"] = floorplan.ratio_clamp;
  return j;
}

ojson power_to_json(const PowerSection& power) {
  ojson j;
  j["interconnect_fraction"] = power.interconnect_fraction;
  return j;
}

ojson activity_to_json(const BusActivity& activity) {
  ojson j;
  j["h_toggles"] = activity.h_toggles;
  j["v_toggles"] = activity.v_toggles;
  j["h_opportunities"] = activity.h_opportunities;
  j["v_opportunities"] = activity.v_opportunities;
  return j;
}

std::string simulate_json_text(const RunConfig& cfg, const SimulateOutcome& outcome) {
  ojson j;
  j["version"] = 1;
  j["kind"] = "simulate";
  j["array"] = array_to_json(cfg.array);
  j["floorplan"] = floorplan_to_json(cfg.floorplan);
  j["power"] = power_to_json(cfg.power);
  j["layers"] = ojson::array();
  for (const LayerRun& run : outcome.layers) {
    ojson entry;
    entry["name"] = run.name;
    if (run.ok) {
      entry["gemm"] = ojson{{"m", run.gemm.m_rows}, {"k", run.gemm.k_depth},
                            {"n", run.gemm.n_cols}};
      entry["cycles"] = run.cycles;
      entry["activity"] = activity_to_json(run.activity);
      entry["a_h"] = run.a_h;
      entry["a_v"] = run.a_v;
      entry["functional"] = "pass";
    } else {
      entry["error"] = run.error;
    }
    j["layers"].push_back(std::move(entry));
  }
  ojson aggregate;
  aggregate["activity"] = activity_to_json(outcome.aggregate);
  aggregate["cycles"] = outcome.cycles;
  if (outcome.aggregate.h_opportunities > 0 && outcome.aggregate.v_opportunities > 0) {
    const ActivityProfile profile =
        activity_profile(outcome.aggregate, to_array_config(cfg.array));
    aggregate["a_h"] = profile.a_h;
    aggregate["a_v"] = profile.a_v;
  }
  aggregate["functional"] = outcome.all_ok ? "pass" : "errors";
  j["aggregate"] = std::move(aggregate);
  j["note"] = model_vs_silicon_note();
  return j.dump(2) + "\n";
}

std::string simulate_csv_text(const RunConfig& cfg, const SimulateOutcome& outcome) {
  std::string csv =
      "layer,m,k,n,cycles,h_toggles,v_toggles,h_opportunities,v_opportunities,a_h,a_v,"
      "functional\n";
  for (const LayerRun& run : outcome.layers) {
    if (!run.ok) {
      continue;
    }
    csv += run.name + ',' + std::to_string(run.gemm.m_rows) + ',' +
           std::to_string(run.gemm.k_depth) + ',' + std::to_string(run.gemm.n_cols) + ',' +
           std::to_string(run.cycles) + ',' + std::to_string(run.activity.h_toggles) + ',' +
           std::to_string(run.activity.v_toggles) + ',' +
           std::to_string(run.activity.h_opportunities) + ',' +
           std::to_string(run.activity.v_opportunities) + ',' + fmt_double(run.a_h) + ',' +
           fmt_double(run.a_v) + ",pass\n";
  }
  csv += "all,,,," + std::to_string(outcome.cycles) + ',' +
         std::to_string(outcome.aggregate.h_toggles) + ',' +
         std::to_string(outcome.aggregate.v_toggles) + ',' +
         std::to_string(outcome.aggregate.h_opportunities) + ',' +
         std::to_string(outcome.aggregate.v_opportunities) + ',';
  if (outcome.aggregate.h_opportunities > 0 && outcome.aggregate.v_opportunities > 0) {
    const ActivityProfile profile =
        activity_profile(outcome.aggregate, to_array_config(cfg.array));
    csv += fmt_double(profile.a_h) + ',' + fmt_double(profile.a_v);
  } else {
    csv += ",";
  }
  csv += outcome.all_ok ? ",pass\n" : ",errors\n";
  return csv;
}

std::string activity_svg_text(const RunConfig& cfg, const SimulateOutcome& outcome) {
  std::vector<BarGroup> groups;
  for (const LayerRun& run : outcome.layers) {
    if (run.ok) {
      groups.push_back(BarGroup{run.name, run.a_h, run.a_v, ""});
    }
  }
  if (outcome.aggregate.h_opportunities > 0 && outcome.aggregate.v_opportunities > 0) {
    const ActivityProfile profile =
        activity_profile(outcome.aggregate, to_array_config(cfg.array));
    groups.push_back(BarGroup{"all", profile.a_h, profile.a_v, ""});
  }
  ChartSpec spec;
  spec.title = "Per-bit switching activity by layer";
  spec.first_name = "a_h (input bus)";
  spec.second_name = "a_v (sum bus)";
  spec.note = model_vs_silicon_note();
  return grouped_bar_svg(spec, groups);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  return dir;
}

// --------------------------------------------------- activity file loading

const ojson& jget(const ojson& j, const char* key, const std::string& origin) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw DataError(origin + ": missing \"" + std::string(key) + "\"");
  }
  return *it;
}

std::int64_t jint(const ojson& j, const char* key, const std::string& origin, std::int64_t lo,
                  std::int64_t hi) {
  const ojson& v = jget(j, key, origin);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw DataError(origin + ": \"" + key + "\" must be an integer");
  }
  const std::int64_t value = v.get<std::int64_t>();
  if (value < lo || value > hi) {
    throw DataError(origin + ": \"" + key + "\" value " + std::to_string(value) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return value;
}

double jnumber(const ojson& j, const char* key, const std::string& origin, double lo, double hi) {
  const ojson& v = jget(j, key, origin);
  if (!v.is_number()) {
    throw DataError(origin + ": \"" + key + "\" must be a number");
  }
  const double value = v.get<double>();
  if (!std::isfinite(value) || value < lo || value > hi) {
    throw DataError(origin + ": \"" + key + "\" value " + v.dump() + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return value;
}

ojson load_simulate_artifact(const std::string& path) {
  const std::string origin = "simulate artifact " + path;
  ojson j;
  try {
    j = ojson::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(origin + ": " + e.what());
  }
  if (!j.is_object() || jget(j, "kind", origin) != "simulate") {
    throw DataError(origin + ": not a simulate result");
  }
  jint(j, "version", origin, 1, 1);
  return j;
}

ArraySection array_from_json(const ojson& j, const std::string& origin) {
  ArraySection a;
  a.rows = int(jint(j, "rows", origin, 1, 1024));
  a.cols = int(jint(j, "cols", origin, 1, 1024));
  a.input_bits = unsigned(jint(j, "input_bits", origin, 2, 24));
  a.accumulator_bits = unsigned(jint(j, "accumulator_bits", origin, 1, 62));
  return a;
}

void check_array_match(const ArraySection& config, const ArraySection& artifact,
                       const std::string& origin) {
  std::string diff;
  const auto add = [&diff](const char* field, auto lhs, auto rhs) {
    if (lhs != rhs) {
      if (!diff.empty()) {
        diff += ", ";
      }
      diff += std::string(field) + " (config " + std::to_string(lhs) + ", artifact " +
              std::to_string(rhs) + ")";
    }
  };
  add("rows", config.rows, artifact.rows);
  add("cols", config.cols, artifact.cols);
  add("input_bits", config.input_bits, artifact.input_bits);
  add("accumulator_bits", config.accumulator_bits, artifact.accumulator_bits);
  if (!diff.empty()) {
    throw ConfigError("config: array does not match " + origin + ": " + diff);
  }
}

struct ResolvedActivity {
  double a_h = 0.0;
  double a_v = 0.0;
  std::string source;
};

ResolvedActivity resolve_activity(const RunConfig& cfg) {
  switch (cfg.activity.kind) {
    case ActivitySection::Kind::Inline:
      return ResolvedActivity{cfg.activity.a_h, cfg.activity.a_v, "inline"};
    case ActivitySection::Kind::File: {
      const std::string origin = "simulate artifact " + cfg.activity.file;
      const ojson j = load_simulate_artifact(cfg.activity.file);
      check_array_match(cfg.array, array_from_json(jget(j, "array", origin), origin + ": array"),
                        origin);
      const ojson& aggregate = jget(j, "aggregate", origin);
      if (!aggregate.contains("a_h") || !aggregate.contains("a_v")) {
        throw DataError(origin + ": aggregate carries no usable activity (every layer failed?)");
      }
      ResolvedActivity act;
      act.a_h = jnumber(aggregate, "a_h", origin + ": aggregate", 0.0, 1.0);
      act.a_v = jnumber(aggregate, "a_v", origin + ": aggregate", 0.0, 1.0);
      act.source = cfg.activity.file;
      return act;
    }
    case ActivitySection::Kind::None:
      break;
  }
  throw MissingActivityError(
      "config: activity: no switching activities available; run `asysa simulate` and point "
      "activity.file at its simulate.json, or set activity.a_h and a_v inline");
}

struct RatioPricing {
  double cost_square = 0.0;
  double cost_selected = 0.0;
  double savings = 0.0;
};

RatioPricing price_ratio(const ArraySection& array, double area, double a_h, double a_v,
                         double ratio) {
  const ArrayConfig cfg = to_array_config(array);
  const ActivityProfile act(a_h, a_v);
  RatioPricing p;
  p.cost_square = weighted_cost(cfg, solve_geometry(area, 1.0), act);
  p.cost_selected = weighted_cost(cfg, solve_geometry(area, ratio), act);
  p.savings = p.cost_square > 0.0 ? 1.0 - p.cost_selected / p.cost_square : 0.0;
  return p;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::uint64_t base_seed) {
  const SimulateOutcome outcome = simulate_workload(cfg, base_seed);
  const fs::path dir = prepare_out_dir(cfg);

  for (const LayerRun& run : outcome.layers) {
    if (run.ok) {
      std::cout << "layer " << run.name << ": a_h=" << fmt_double(run.a_h)
                << " a_v=" << fmt_double(run.a_v) << " cycles=" << run.cycles
                << " functional=pass\n";
    } else {
      std::cout << "layer " << run.name << ": error: " << run.error << "\n";
    }
  }
  if (outcome.aggregate.h_opportunities > 0 && outcome.aggregate.v_opportunities > 0) {
    const ActivityProfile profile =
        activity_profile(outcome.aggregate, to_array_config(cfg.array));
    std::cout << "aggregate: a_h=" << fmt_double(profile.a_h)
              << " a_v=" << fmt_double(profile.a_v) << " cycles=" << outcome.cycles << "\n";
  }

  if (cfg.output.wants("json")) {
    write_file_atomic(dir / "simulate.json", simulate_json_text(cfg, outcome));
    std::cout << "wrote " << (dir / "simulate.json").string() << "\n";
  }
  if (cfg.output.wants("csv")) {
    write_file_atomic(dir / "simulate.csv", simulate_csv_text(cfg, outcome));
    std::cout << "wrote " << (dir / "simulate.csv").string() << "\n";
  }
  if (cfg.output.wants("svg")) {
    write_file_atomic(dir / "activity.svg", activity_svg_text(cfg, outcome));
    std::cout << "wrote " << (dir / "activity.svg").string() << "\n";
  }
  return outcome.all_ok ? 0 : 3;
}

int cmd_optimize(const RunConfig& cfg) {
  const ResolvedActivity act = resolve_activity(cfg);
  const RatioChoice ratio = resolve_ratio(cfg.array, cfg.floorplan, act.a_h, act.a_v);
  const PeGeometry geometry = solve_geometry(cfg.floorplan.area, ratio.selected);
  const RatioPricing pricing =
      price_ratio(cfg.array, cfg.floorplan.area, act.a_h, act.a_v, ratio.selected);
  const double total = total_power_savings(pricing.savings,
                                           CalibratedFraction(cfg.power.interconnect_fraction));

  ojson j;
  j["version"] = 1;
  j["kind"] = "optimize";
  j["array"] = array_to_json(cfg.array);
  j["activity"] = ojson{{"a_h", act.a_h}, {"a_v", act.a_v}, {"source", act.source}};
  j["ratio"] = ojson{{"raw", ratio.raw},
                     {"rounded", round_tenths(ratio.raw)},
                     {"selected", ratio.selected},
                     {"rounding_applied", cfg.floorplan.ratio_rounding},
                     {"clamped", ratio.clamped},
                     {"source", ratio.source}};
  j["geometry"] =
      ojson{{"width", geometry.width}, {"height", geometry.height}, {"area", geometry.area}};
  j["savings"] = ojson{{"interconnect", pricing.savings},
                       {"total", total},
                       {"interconnect_fraction", cfg.power.interconnect_fraction}};
  j["note"] = model_vs_silicon_note();

  std::string text;
  text += "aspect-ratio optimization\n";
  text += "  array: " + std::to_string(cfg.array.rows) + "x" + std::to_string(cfg.array.cols) +
          ", input bus " + std::to_string(cfg.array.input_bits) + " bits, sum bus " +
          std::to_string(cfg.array.accumulator_bits) + " bits\n";
  text += "  activity: a_h=" + fmt_double(act.a_h) + ", a_v=" + fmt_double(act.a_v) + " (" +
          act.source + ")\n";
  text += "  aspect ratio W/H: " + fmt_double(ratio.raw) + " (one decimal " +
          fmt_double(round_tenths(ratio.raw)) + "), selected " + fmt_double(ratio.selected) +
          " [" + ratio.source + "]\n";
  text += "  PE geometry: W=" + fmt_double(geometry.width) + ", H=" +
          fmt_double(geometry.height) + ", area=" + fmt_double(geometry.area) + "\n";
  text += "  interconnect savings vs square: " + percent(pricing.savings) + "\n";
  text += "  estimated total savings: " + percent(total) + "\n";
  text += "  note: " + model_vs_silicon_note() + "\n";

  std::cout << text;

  const fs::path dir = prepare_out_dir(cfg);
  if (cfg.output.wants("json")) {
    write_file_atomic(dir / "optimize.json", j.dump(2) + "\n");
    std::cout << "wrote " << (dir / "optimize.json").string() << "\n";
  }
  if (cfg.output.wants("text")) {
    write_file_atomic(dir / "optimize.txt", text);
    std::cout << "wrote " << (dir / "optimize.txt").string() << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::uint64_t base_seed) {
  if (!cfg.sweep.present) {
    throw ConfigError("config: sweep: this command needs a sweep section");
  }
  std::string csv;

  if (cfg.sweep.axis == "ratio") {
    const ResolvedActivity act = resolve_activity(cfg);
    const RatioChoice optimum = resolve_ratio(cfg.array, cfg.floorplan, act.a_h, act.a_v);
    std::size_t best = 0;
    for (std::size_t i = 1; i < cfg.sweep.grid.size(); ++i) {
      if (std::fabs(std::log(cfg.sweep.grid[i]) - std::log(optimum.raw)) <
          std::fabs(std::log(cfg.sweep.grid[best]) - std::log(optimum.raw))) {
        best = i;
      }
    }
    csv = "ratio,width,height,weighted_cost,savings_vs_square,is_optimum\n";
    for (std::size_t i = 0; i < cfg.sweep.grid.size(); ++i) {
      const double ratio = cfg.sweep.grid[i];
      const PeGeometry geometry = solve_geometry(cfg.floorplan.area, ratio);
      const RatioPricing pricing =
          price_ratio(cfg.array, cfg.floorplan.area, act.a_h, act.a_v, ratio);
      csv += fmt_double(ratio) + ',' + fmt_double(geometry.width) + ',' +
             fmt_double(geometry.height) + ',' + fmt_double(pricing.cost_selected) + ',' +
             fmt_double(pricing.savings) + ',' + (i == best ? "1" : "0") + "\n";
    }
  } else if (cfg.sweep.axis == "zero_fraction") {
    if (cfg.layers.empty()) {
      throw ConfigError("config: sweep: the zero_fraction axis needs layers to simulate");
    }
    for (const LayerConfig& layer : cfg.layers) {
      if (layer.data.kind != DataSourceConfig::Kind::Synthetic) {
        throw ConfigError("config: sweep: the zero_fraction axis varies synthetic data, but "
                          "layer \"" +
                          layer.spec.name + "\" reads a trace");
      }
    }
    csv = "zero_fraction,a_h,a_v,ratio,weighted_cost,savings_vs_square\n";
    for (const double z : cfg.sweep.grid) {
      RunConfig variant = cfg;
      for (LayerConfig& layer : variant.layers) {
        layer.data.zero_fraction = z;
      }
      const SimulateOutcome outcome = simulate_workload(variant, base_seed);
      for (const LayerRun& run : outcome.layers) {
        if (!run.ok) {
          throw DataError("sweep: layer \"" + run.name + "\": " + run.error);
        }
      }
      const ActivityProfile profile =
          activity_profile(outcome.aggregate, to_array_config(cfg.array));
      const RatioChoice ratio = resolve_ratio(cfg.array, cfg.floorplan, profile.a_h, profile.a_v);
      const RatioPricing pricing =
          price_ratio(cfg.array, cfg.floorplan.area, profile.a_h, profile.a_v, ratio.selected);
      csv += fmt_double(z) + ',' + fmt_double(profile.a_h) + ',' + fmt_double(profile.a_v) + ',' +
             fmt_double(ratio.selected) + ',' + fmt_double(pricing.cost_selected) + ',' +
             fmt_double(pricing.savings) + "\n";
    }
  } else {
    const ResolvedActivity act = resolve_activity(cfg);
    csv = "input_bits,bus_h,bus_v,ratio,weighted_cost,savings_vs_square\n";
    for (const double value : cfg.sweep.grid) {
      ArraySection scaled = cfg.array;
      scaled.input_bits = unsigned(value);
      scaled.accumulator_bits =
          required_accumulator_width(scaled.input_bits, unsigned(scaled.rows));
      const RatioChoice ratio = resolve_ratio(scaled, cfg.floorplan, act.a_h, act.a_v);
      const RatioPricing pricing =
          price_ratio(scaled, cfg.floorplan.area, act.a_h, act.a_v, ratio.selected);
      csv += std::to_string(unsigned(value)) + ',' + std::to_string(scaled.input_bits) + ',' +
             std::to_string(scaled.accumulator_bits) + ',' + fmt_double(ratio.selected) + ',' +
             fmt_double(pricing.cost_selected) + ',' + fmt_double(pricing.savings) + "\n";
    }
  }

  const fs::path dir = prepare_out_dir(cfg);
  write_file_atomic(dir / "sweep.csv", csv);
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << cfg.sweep.grid.size()
            << " grid points)\n";
  return 0;
}

namespace {

void collect_block_diffs(const ojson& lhs, const ojson& rhs, const std::string& prefix,
                         std::vector<std::string>& diffs) {
  if (lhs.is_object() && rhs.is_object()) {
    for (const auto& item : lhs.items()) {
      if (!rhs.contains(item.key())) {
        diffs.push_back(prefix + item.key());
      } else {
        collect_block_diffs(item.value(), rhs.at(item.key()), prefix + item.key() + ".", diffs);
      }
    }
    for (const auto& item : rhs.items()) {
      if (!lhs.contains(item.key())) {
        diffs.push_back(prefix + item.key());
      }
    }
    return;
  }
  if (lhs != rhs) {
    diffs.push_back(prefix.empty() ? "(value)" : prefix.substr(0, prefix.size() - 1));
  }
}

}  // namespace

int cmd_report(const RunConfig& cfg) {
  std::vector<std::string> inputs = cfg.report.inputs;
  if (inputs.empty()) {
    inputs.push_back((fs::path(cfg.output.directory) / "simulate.json").string());
  }

  std::vector<ojson> artifacts;
  artifacts.reserve(inputs.size());
  for (const std::string& path : inputs) {
    artifacts.push_back(load_simulate_artifact(path));
  }

  for (std::size_t i = 1; i < artifacts.size(); ++i) {
    std::vector<std::string> diffs;
    for (const char* block : {"array", "floorplan", "power"}) {
      const std::string origin0 = "simulate artifact " + inputs[0];
      const std::string origin_i = "simulate artifact " + inputs[i];
      collect_block_diffs(jget(artifacts[0], block, origin0), jget(artifacts[i], block, origin_i),
                          std::string(block) + ".", diffs);
    }
    if (!diffs.empty()) {
      std::string joined;
      for (const std::string& d : diffs) {
        joined += joined.empty() ? d : ", " + d;
      }
      throw ConfigError("report: " + inputs[0] + " and " + inputs[i] +
                        " were produced with different configurations; differing fields: " +
                        joined);
    }
  }

  const std::string origin0 = "simulate artifact " + inputs[0];
  const ArraySection array = array_from_json(jget(artifacts[0], "array", origin0), origin0);
  const ojson& floorplan_j = jget(artifacts[0], "floorplan", origin0);
  FloorplanSection floorplan;
  floorplan.area = jnumber(floorplan_j, "area", origin0 + ": floorplan", 1e-12, 1e12);
  if (floorplan_j.contains("ratio_override")) {
    floorplan.ratio_override =
        jnumber(floorplan_j, "ratio_override", origin0 + ": floorplan", 1e-6, 1e6);
  }
  floorplan.ratio_rounding = jget(floorplan_j, "ratio_rounding", origin0).get<bool>();
  floorplan.ratio_clamp = jnumber(floorplan_j, "ratio_clamp", origin0 + ": floorplan", 1.0, 1e6);
  const double fraction = jnumber(jget(artifacts[0], "power", origin0), "interconnect_fraction",
                                  origin0 + ": power", 1e-9, 1.0);

  struct Entry {
    std::string label;
    BusActivity activity;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    const std::string origin = "simulate artifact " + inputs[i];
    const ojson& layers = jget(artifacts[i], "layers", origin);
    if (!layers.is_array()) {
      throw DataError(origin + ": \"layers\" must be an array");
    }
    for (const ojson& layer : layers) {
      if (layer.contains("error")) {
        continue;
      }
      Entry entry;
      entry.label = jget(layer, "name", origin).get<std::string>();
      const ojson& activity = jget(layer, "activity", origin + ": layer " + entry.label);
      const std::string at = origin + ": layer " + entry.label;
      entry.activity.h_toggles = std::uint64_t(jint(activity, "h_toggles", at, 0, INT64_MAX));
      entry.activity.v_toggles = std::uint64_t(jint(activity, "v_toggles", at, 0, INT64_MAX));
      entry.activity.h_opportunities =
          std::uint64_t(jint(activity, "h_opportunities", at, 0, INT64_MAX));
      entry.activity.v_opportunities =
          std::uint64_t(jint(activity, "v_opportunities", at, 0, INT64_MAX));
      entries.push_back(std::move(entry));
    }
  }
  if (entries.empty()) {
    throw DataError("report: the inputs contain no successfully simulated layers");
  }

  // Identical layer names across inputs get an input ordinal suffix so
  // every chart group and CSV row stays distinguishable.
  {
    std::map<std::string, int> counts;
    for (const Entry& entry : entries) {
      ++counts[entry.label];
    }
    std::map<std::string, int> seen;
    for (Entry& entry : entries) {
      if (counts[entry.label] > 1) {
        entry.label += "/" + std::to_string(++seen[entry.label]);
      }
    }
  }

  BusActivity aggregate;
  for (const Entry& entry : entries) {
    aggregate.merge(entry.activity);
  }
  if (aggregate.h_opportunities == 0 || aggregate.v_opportunities == 0) {
    throw DataError("report: the inputs record no transition opportunities");
  }
  const ActivityProfile profile = activity_profile(aggregate, to_array_config(array));
  const RatioChoice ratio = resolve_ratio(array, floorplan, profile.a_h, profile.a_v);
  const PeGeometry square = solve_geometry(floorplan.area, 1.0);
  const PeGeometry asym = solve_geometry(floorplan.area, ratio.selected);

  std::string csv = "layer,energy_square,energy_asymmetric,interconnect_savings,total_savings\n";
  std::vector<BarGroup> groups;
  std::vector<double> layer_savings;
  double sum_square = 0.0;
  double sum_asym = 0.0;
  for (const Entry& entry : entries) {
    const double e_square = interconnect_energy(entry.activity, square);
    const double e_asym = interconnect_energy(entry.activity, asym);
    const double savings = e_square > 0.0 ? 1.0 - e_asym / e_square : 0.0;
    sum_square += e_square;
    sum_asym += e_asym;
    layer_savings.push_back(savings);
    csv += entry.label + ',' + fmt_double(e_square) + ',' + fmt_double(e_asym) + ',' +
           fmt_double(savings) + ',' + fmt_double(fraction * savings) + "\n";
    groups.push_back(BarGroup{entry.label, e_square, e_asym,
                              "-" + fmt_fixed(savings * 100.0, 1) + "%"});
  }
  const double average = sum_square > 0.0 ? 1.0 - sum_asym / sum_square : 0.0;
  const double mean_square = sum_square / double(entries.size());
  const double mean_asym = sum_asym / double(entries.size());
  csv += "average," + fmt_double(mean_square) + ',' + fmt_double(mean_asym) + ',' +
         fmt_double(average) + ',' + fmt_double(fraction * average) + "\n";
  groups.push_back(BarGroup{"average", mean_square, mean_asym,
                            "-" + fmt_fixed(average * 100.0, 1) + "%"});

  ChartSpec spec;
  spec.title = "Interconnect energy: square vs asymmetric PE (W/H=" +
               fmt_fixed(ratio.selected, 3) + ")";
  spec.first_name = "square";
  spec.second_name = "asymmetric";
  spec.note = model_vs_silicon_note();

  std::cout << "aspect ratio W/H: " << fmt_double(ratio.selected) << " [" << ratio.source
            << "]\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::cout << "layer " << groups[i].label << ": interconnect savings "
              << percent(layer_savings[i]) << "\n";
  }
  std::cout << "average interconnect savings: " << percent(average)
            << ", estimated total savings: " << percent(fraction * average) << "\n";
  std::cout << "note: " << model_vs_silicon_note() << "\n";

  const fs::path dir = prepare_out_dir(cfg);
  write_file_atomic(dir / "report.csv", csv);
  std::cout << "wrote " << (dir / "report.csv").string() << "\n";
  write_file_atomic(dir / "report.svg", grouped_bar_svg(spec, groups));
  std::cout << "wrote " << (dir / "report.svg").string() << "\n";
  return 0;
}

}  // namespace asysa::cli
