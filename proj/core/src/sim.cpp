#include "asysa/sim.hpp"

#include <bit>
#include <string>
#include <vector>

namespace asysa {

namespace {

unsigned ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0u : unsigned(std::bit_width(n - 1));
}

}  // namespace

unsigned hamming_toggles(std::int64_t prev, std::int64_t next, unsigned width_bits) {
  return unsigned(std::popcount(encode_bits(prev, width_bits) ^ encode_bits(next, width_bits)));
}

ToggleStats stream_toggle_stats(std::span<const std::int64_t> stream, unsigned width_bits) {
  ToggleStats stats;
  std::uint64_t state = 0;
  for (const std::int64_t value : stream) {
    const std::uint64_t bits = encode_bits(value, width_bits);
    stats.toggles += unsigned(std::popcount(bits ^ state));
    state = bits;
  }
  stats.transitions = stream.size();
  return stats;
}

void BusActivity::merge(const BusActivity& other) noexcept {
  h_toggles += other.h_toggles;
  v_toggles += other.v_toggles;
  h_opportunities += other.h_opportunities;
  v_opportunities += other.v_opportunities;
}

IntMatrix reference_matmul(const IntMatrix& a, const IntMatrix& w) {
  if (a.cols() != w.rows()) {
    throw ShapeError("matmul inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(w.rows()));
  }
  const unsigned out_width = a.width_bits() + w.width_bits() + ceil_log2(a.cols());
  if (out_width > 63) {
    throw DomainError("matmul accumulator would need " + std::to_string(out_width) +
                      " bits; at most 63 are supported");
  }
  IntMatrix out(a.rows(), w.cols(), out_width, a.is_signed() || w.is_signed());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    for (std::size_t j = 0; j < w.cols(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc += row[k] * w(k, j);
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

SimResult run_ws_matmul(const IntMatrix& a, const IntMatrix& w, const ArrayConfig& cfg,
                        const SimOptions& options) {
  if (a.is_signed()) {
    throw DomainError("streamed inputs must be unsigned");
  }
  if (!w.is_signed()) {
    throw DomainError("stationary weights must be signed");
  }
  if (int(a.width_bits()) > cfg.bus_h) {
    throw DomainError("input width " + std::to_string(a.width_bits()) +
                      " exceeds the horizontal bus width " + std::to_string(cfg.bus_h));
  }
  if (int(w.width_bits()) > cfg.bus_h) {
    throw DomainError("weight width " + std::to_string(w.width_bits()) +
                      " exceeds the horizontal bus width " + std::to_string(cfg.bus_h));
  }
  if (a.cols() != w.rows()) {
    throw ShapeError("matmul inner dimensions differ: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(w.rows()));
  }

  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  const std::size_t n = w.cols();
  const std::size_t R = std::size_t(cfg.rows);
  const std::size_t C = std::size_t(cfg.cols);

  const TileSchedule schedule = tile_gemm(GemmSpec{m, k, n}, w, cfg);

  const unsigned out_width =
      a.width_bits() + w.width_bits() + ceil_log2(std::uint64_t(std::max(R, k)));
  if (out_width > 63) {
    throw DomainError("output accumulator would need " + std::to_string(out_width) +
                      " bits; at most 63 are supported");
  }

  const std::int64_t v_lo = IntMatrix::min_value(unsigned(cfg.bus_v), true);
  const std::int64_t v_hi = IntMatrix::max_value(unsigned(cfg.bus_v), true);
  const unsigned bh = unsigned(cfg.bus_h);
  const unsigned bv = unsigned(cfg.bus_v);

  std::vector<std::int64_t> acc(m * n, 0);
  std::vector<std::uint64_t> h_state(R, 0);       // last bit pattern per row stream
  std::vector<std::uint64_t> v_state(R * C, 0);   // last bit pattern per vertical segment
  std::vector<std::int64_t> w_col(R, 0);

  BusActivity act;
  std::uint64_t cycles = 0;

  for (const WeightTile& tile : schedule.tiles) {
    if (options.include_weight_preload) {
      // Weights sink down the columns, deepest row first; the segment
      // below PE(r, c) carries the weights bound for rows r+1..R-1. They
      // occupy the low bus_h wires of the vertical bus.
      for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t r = 0; r < R; ++r) {
          std::uint64_t& state = v_state[r * C + c];
          for (std::size_t j = R; j-- > r + 1;) {
            const std::uint64_t bits = encode_bits(tile.weights(j, c), bh);
            act.v_toggles += unsigned(std::popcount(bits ^ state));
            state = bits;
          }
        }
      }
      act.v_opportunities += C * (R * (R - 1) / 2);
    }

    // Horizontal: all C segments of array row r repeat the same stream,
    // so one pass per row is counted C times.
    const std::size_t k_rows = tile.k_end - tile.k_begin;
    for (std::size_t r = 0; r < R; ++r) {
      const bool live = r < k_rows;
      std::uint64_t state = h_state[r];
      std::uint64_t toggles = 0;
      for (std::size_t mi = 0; mi < m; ++mi) {
        const std::uint64_t bits = live ? encode_bits(a(mi, tile.k_begin + r), bh) : 0;
        toggles += unsigned(std::popcount(bits ^ state));
        state = bits;
      }
      h_state[r] = state;
      act.h_toggles += toggles * C;
    }
    act.h_opportunities += R * C * m;

    // Vertical: the segment below PE(r, c) carries the partial sums
    // accumulated through array row r, one value per streamed input row.
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t r = 0; r < R; ++r) {
        w_col[r] = tile.weights(r, c);
      }
      const bool n_live = tile.n_begin + c < tile.n_end;
      std::uint64_t* column_state = v_state.data() + c;
      for (std::size_t mi = 0; mi < m; ++mi) {
        const auto a_row = a.row(mi);
        std::int64_t psum = 0;
        for (std::size_t r = 0; r < R; ++r) {
          const std::int64_t a_val = r < k_rows ? a_row[tile.k_begin + r] : 0;
          psum += a_val * w_col[r];
          if (psum < v_lo || psum > v_hi) {
            throw WidthViolationError(
                "partial sum " + std::to_string(psum) + " at array row " + std::to_string(r) +
                " exceeds the " + std::to_string(cfg.bus_v) +
                "-bit vertical bus; the width contract is broken");
          }
          std::uint64_t& state = column_state[r * C];
          const std::uint64_t bits = encode_bits(psum, bv);
          act.v_toggles += unsigned(std::popcount(bits ^ state));
          state = bits;
        }
        if (n_live) {
          acc[mi * n + tile.n_begin + c] += psum;
        }
      }
    }
    act.v_opportunities += R * C * m;
    cycles += m;
  }

  IntMatrix out(m, n, out_width, true);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.set(i, j, acc[i * n + j]);
    }
  }
  return SimResult{std::move(out), act, cycles};
}

ActivityProfile activity_profile(const BusActivity& activity, const ArrayConfig& cfg) {
  if (activity.h_opportunities == 0 || activity.v_opportunities == 0) {
    throw EmptySimulationError("no transition opportunities were recorded");
  }
  return ActivityProfile(
      double(activity.h_toggles) / (double(activity.h_opportunities) * cfg.bus_h),
      double(activity.v_toggles) / (double(activity.v_opportunities) * cfg.bus_v));
}

ActivityProfile activity_profile(const SimResult& result, const ArrayConfig& cfg) {
  return activity_profile(result.activity, cfg);
}

}  // namespace asysa
