#include "asysa/workload.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace asysa {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) {
  return (a + b - 1) / b;
}

double unit_double(std::uint64_t u) {
  return double(u >> 11) * 0x1.0p-53;
}

void check_synth_width(unsigned bits) {
  if (bits < 1 || bits > 62) {
    throw DomainError("synthetic data width must be between 1 and 62 bits");
  }
}

}  // namespace

LayerSpec::LayerSpec(std::string name_in, int kernel_in, int out_height_in, int out_width_in,
                     int in_channels_in, int out_channels_in)
    : name(std::move(name_in)), kernel(kernel_in), out_height(out_height_in),
      out_width(out_width_in), in_channels(in_channels_in), out_channels(out_channels_in) {
  if (kernel < 1 || out_height < 1 || out_width < 1 || in_channels < 1 || out_channels < 1) {
    throw DomainError("layer '" + name + "': all dimensions must be at least 1");
  }
}

GemmSpec lower_conv_to_gemm(const LayerSpec& layer) {
  return GemmSpec{
      std::size_t(layer.out_height) * std::size_t(layer.out_width),
      std::size_t(layer.kernel) * std::size_t(layer.kernel) * std::size_t(layer.in_channels),
      std::size_t(layer.out_channels),
  };
}

ConvInputShape conv_input_shape(const LayerSpec& layer, int stride, int padding) {
  if (stride < 1) {
    throw DomainError("stride must be at least 1");
  }
  if (padding < 0) {
    throw DomainError("padding must be non-negative");
  }
  const int h = (layer.out_height - 1) * stride + layer.kernel - 2 * padding;
  const int w = (layer.out_width - 1) * stride + layer.kernel - 2 * padding;
  if (h < 1 || w < 1) {
    throw DomainError("layer '" + layer.name + "': stride/padding imply an empty input (" +
                      std::to_string(h) + "x" + std::to_string(w) + ")");
  }
  return ConvInputShape{h, w};
}

IntMatrix im2col(const IntMatrix& input, const LayerSpec& layer, int stride, int padding) {
  if (padding < 0) {
    padding = (layer.kernel - 1) / 2;  // "same" padding for odd kernels at stride 1
  }
  const ConvInputShape in = conv_input_shape(layer, stride, padding);
  const std::size_t spatial = std::size_t(in.height) * std::size_t(in.width);
  if (input.rows() != std::size_t(layer.in_channels) || input.cols() != spatial) {
    throw ShapeError("layer '" + layer.name + "': input tensor is " +
                     std::to_string(input.rows()) + "x" + std::to_string(input.cols()) +
                     ", expected " + std::to_string(layer.in_channels) + "x" +
                     std::to_string(spatial));
  }

  const GemmSpec gemm = lower_conv_to_gemm(layer);
  IntMatrix out(gemm.m_rows, gemm.k_depth, input.width_bits(), input.is_signed());
  const int K = layer.kernel;
  const int C = layer.in_channels;
  for (int oy = 0; oy < layer.out_height; ++oy) {
    for (int ox = 0; ox < layer.out_width; ++ox) {
      const std::size_t r = std::size_t(oy) * layer.out_width + ox;
      for (int ky = 0; ky < K; ++ky) {
        const int iy = oy * stride + ky - padding;
        for (int kx = 0; kx < K; ++kx) {
          const int ix = ox * stride + kx - padding;
          const bool inside = iy >= 0 && iy < in.height && ix >= 0 && ix < in.width;
          for (int c = 0; c < C; ++c) {
            const std::size_t k = (std::size_t(ky) * K + kx) * C + c;
            const std::int64_t v = inside ? input(c, std::size_t(iy) * in.width + ix) : 0;
            out.set(r, k, v);
          }
        }
      }
    }
  }
  return out;
}

TileSchedule tile_gemm(const GemmSpec& gemm, const IntMatrix& weights, const ArrayConfig& cfg) {
  if (gemm.k_depth < 1 || gemm.n_cols < 1) {
    throw ShapeError("tiling needs k_depth >= 1 and n_cols >= 1");
  }
  if (weights.rows() != gemm.k_depth || weights.cols() != gemm.n_cols) {
    throw ShapeError("weight matrix is " + std::to_string(weights.rows()) + "x" +
                     std::to_string(weights.cols()) + ", expected " +
                     std::to_string(gemm.k_depth) + "x" + std::to_string(gemm.n_cols));
  }
  const std::size_t R = std::size_t(cfg.rows);
  const std::size_t C = std::size_t(cfg.cols);

  TileSchedule schedule;
  schedule.k_blocks = ceil_div(gemm.k_depth, R);
  schedule.n_blocks = ceil_div(gemm.n_cols, C);
  schedule.tiles.reserve(schedule.k_blocks * schedule.n_blocks);
  for (std::size_t nb = 0; nb < schedule.n_blocks; ++nb) {
    for (std::size_t kb = 0; kb < schedule.k_blocks; ++kb) {
      WeightTile tile{kb,
                      nb,
                      kb * R,
                      std::min(kb * R + R, gemm.k_depth),
                      nb * C,
                      std::min(nb * C + C, gemm.n_cols),
                      IntMatrix(R, C, weights.width_bits(), weights.is_signed())};
      for (std::size_t r = 0; r < tile.k_end - tile.k_begin; ++r) {
        for (std::size_t c = 0; c < tile.n_end - tile.n_begin; ++c) {
          tile.weights.set(r, c, weights(tile.k_begin + r, tile.n_begin + c));
        }
      }
      schedule.tiles.push_back(std::move(tile));
    }
  }
  return schedule;
}

IntMatrix quantize(std::span<const double> values, std::size_t rows, std::size_t cols,
                   unsigned bits, bool is_signed, double scale) {
  if (bits < 2 || bits > 37) {
    throw DomainError("quantizer width must be between 2 and 37 bits, got " +
                      std::to_string(bits));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("quantizer scale must be positive and finite");
  }
  if (values.size() != rows * cols) {
    throw ShapeError("quantize got " + std::to_string(values.size()) + " values for a " +
                     std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  const double lo = double(IntMatrix::min_value(bits, is_signed));
  const double hi = double(IntMatrix::max_value(bits, is_signed));
  IntMatrix out(rows, cols, bits, is_signed);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DomainError("non-finite value at index " + std::to_string(i));
    }
    const double q = std::round(values[i] / scale);  // std::round is half away from zero
    const double clamped = std::min(std::max(q, lo), hi);
    out.set(i / cols, i % cols, std::int64_t(clamped));
  }
  return out;
}

IntMatrix synth_activations(std::size_t rows, std::size_t cols, double zero_fraction,
                            unsigned bits, std::uint64_t seed) {
  if (!(zero_fraction >= 0.0 && zero_fraction <= 1.0)) {
    throw DomainError("zero_fraction must lie in [0, 1]");
  }
  check_synth_width(bits);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  IntMatrix out(rows, cols, bits, false);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (unit_double(rng()) < zero_fraction) {
        continue;
      }
      std::uint64_t v = 0;
      do {
        v = rng() & mask;
      } while (v == 0);
      out.set(r, c, std::int64_t(v));
    }
  }
  return out;
}

IntMatrix synth_weights(std::size_t rows, std::size_t cols, unsigned bits, std::uint64_t seed) {
  check_synth_width(bits);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  const std::int64_t offset = std::int64_t{1} << (bits - 1);
  IntMatrix out(rows, cols, bits, true);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.set(r, c, std::int64_t(rng() & mask) - offset);
    }
  }
  return out;
}

}  // namespace asysa
