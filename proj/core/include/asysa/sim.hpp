#pragma once

#include <cstdint>
#include <span>

#include "asysa/matrix.hpp"
#include "asysa/model.hpp"
#include "asysa/workload.hpp"

namespace asysa {

/// Bits that flip when a width_bits-wide bus goes from prev to next.
unsigned hamming_toggles(std::int64_t prev, std::int64_t next, unsigned width_bits);

struct ToggleStats {
  std::uint64_t toggles = 0;
  std::uint64_t transitions = 0;
};

/// Toggle tally of a value sequence on one bus segment. The segment rests
/// at zero, so the first value contributes its own popcount and the
/// transition count equals the sequence length.
ToggleStats stream_toggle_stats(std::span<const std::int64_t> stream, unsigned width_bits);

/// Switching totals summed over every register-to-register segment of
/// each direction; opportunities count (segment, stream step) pairs.
/// merge is associative and commutative, so per-layer or per-tile tallies
/// reduce to the same totals in any order.
struct BusActivity {
  std::uint64_t h_toggles = 0;
  std::uint64_t v_toggles = 0;
  std::uint64_t h_opportunities = 0;
  std::uint64_t v_opportunities = 0;

  void merge(const BusActivity& other) noexcept;
};

struct SimOptions {
  /// Also charge the vertical buses for shifting each tile's weights into
  /// place. Off by default: vertical activity means partial-sum traffic.
  bool include_weight_preload = false;
};

struct SimResult {
  IntMatrix output;
  BusActivity activity;
  std::uint64_t cycles = 0;  ///< streamed input rows summed over all tiles
};

/// Plain triple-loop integer GEMM; the functional reference for the
/// array simulation. Output width is sized for k accumulated products.
IntMatrix reference_matmul(const IntMatrix& a, const IntMatrix& w);

/// Weight-stationary execution of a * w with per-segment switching
/// instrumentation.
///
/// The model is stream-accurate rather than cycle-accurate: under the
/// skewed schedule every physical segment sees the same value sequence as
/// its row or column neighbors, only time-shifted, and Hamming toggle
/// totals are invariant under time shifts. Per tile, each of the C
/// horizontal segments of array row r carries that row's streamed input
/// column, and the vertical segment below PE(r, c) carries the partial
/// sums accumulated through row r. All buses start at zero, sequences of
/// consecutive tiles are concatenated back to back, and cross-tile
/// accumulation happens outside the array, so it adds no bus traffic.
///
/// `a` must be unsigned and `w` signed, both no wider than bus_h. Every
/// partial sum is checked against bus_v; with bus_v from
/// required_accumulator_width that check cannot fire.
SimResult run_ws_matmul(const IntMatrix& a, const IntMatrix& w, const ArrayConfig& cfg,
                        const SimOptions& options = {});

/// Per-bit activities from recorded totals. Aggregation across runs is
/// toggle-weighted: merge the BusActivity tallies first, then derive.
/// Throws EmptySimulationError when there were no transition opportunities.
ActivityProfile activity_profile(const BusActivity& activity, const ArrayConfig& cfg);
ActivityProfile activity_profile(const SimResult& result, const ArrayConfig& cfg);

}  // namespace asysa
