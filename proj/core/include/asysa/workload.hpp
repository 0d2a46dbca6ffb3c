#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asysa/matrix.hpp"
#include "asysa/model.hpp"

namespace asysa {

/// Convolutional layer shape. out_height/out_width are OUTPUT spatial
/// dims; the input spatial dims follow from stride and padding.
struct LayerSpec {
  std::string name;
  int kernel;
  int out_height;
  int out_width;
  int in_channels;
  int out_channels;

  LayerSpec(std::string name, int kernel, int out_height, int out_width, int in_channels,
            int out_channels);
};

/// Matrix-multiply dimensions of a lowered convolution.
struct GemmSpec {
  std::size_t m_rows;   // output pixels
  std::size_t k_depth;  // reduction length
  std::size_t n_cols;   // output channels
};

GemmSpec lower_conv_to_gemm(const LayerSpec& layer);

struct ConvInputShape {
  int height;
  int width;
};

/// Input spatial dims implied by the output dims, stride and padding.
ConvInputShape conv_input_shape(const LayerSpec& layer, int stride, int padding);

/// Patch-gather lowering of a convolution input.
///
/// `input` holds one channel per row with spatial positions flattened
/// row-major along the columns. Row r of the result is the receptive
/// field of output pixel r, flattened as (ky, kx, channel) with the
/// channel index fastest; positions outside the input read as zero.
IntMatrix im2col(const IntMatrix& input, const LayerSpec& layer, int stride = 1,
                 int padding = -1);

/// One weight tile resident in the array, zero padded to rows x cols.
struct WeightTile {
  std::size_t k_block;
  std::size_t n_block;
  std::size_t k_begin;
  std::size_t k_end;
  std::size_t n_begin;
  std::size_t n_end;
  IntMatrix weights;
};

/// Tiles in execution order: n-major with k fastest, so every reduction
/// block of one output-column block runs back to back and the external
/// accumulator finishes each column block before moving on.
struct TileSchedule {
  std::size_t k_blocks = 0;
  std::size_t n_blocks = 0;
  std::vector<WeightTile> tiles;
};

TileSchedule tile_gemm(const GemmSpec& gemm, const IntMatrix& weights, const ArrayConfig& cfg);

/// Uniform scalar quantizer: round half away from zero, then saturate to
/// the declared range. Widths of 2..37 bits are accepted.
IntMatrix quantize(std::span<const double> values, std::size_t rows, std::size_t cols,
                   unsigned bits, bool is_signed, double scale);

/// Synthetic unsigned activations: each element is zero with probability
/// zero_fraction, otherwise uniform over [1, 2^bits - 1]. All draws come
/// from std::mt19937_64 seeded with `seed` (zero decisions from the top
/// 53 bits of one draw, magnitudes by masked rejection), so the output is
/// identical on every platform.
IntMatrix synth_activations(std::size_t rows, std::size_t cols, double zero_fraction,
                            unsigned bits, std::uint64_t seed);

/// Synthetic signed weights, uniform over the full two's-complement range
/// of `bits`, from the same fixed generator as synth_activations.
IntMatrix synth_weights(std::size_t rows, std::size_t cols, unsigned bits, std::uint64_t seed);

}  // namespace asysa
