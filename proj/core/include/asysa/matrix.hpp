#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "asysa/errors.hpp"

namespace asysa {

/// Dense row-major integer matrix with a declared element encoding.
///
/// The declared width (1..63 bits) and signedness define the representable
/// range: plain binary for unsigned, two's complement for signed. Every
/// store is range-checked, so a constructed matrix always satisfies its
/// encoding contract.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, unsigned width_bits, bool is_signed);

  static std::int64_t min_value(unsigned width_bits, bool is_signed);
  static std::int64_t max_value(unsigned width_bits, bool is_signed);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  unsigned width_bits() const noexcept { return width_bits_; }
  bool is_signed() const noexcept { return signed_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::int64_t operator()(std::size_t row, std::size_t col) const {
    return data_[row * cols_ + col];
  }

  /// Throws WidthViolationError when the value is outside the declared range.
  void set(std::size_t row, std::size_t col, std::int64_t value);

  std::span<const std::int64_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::int64_t> values() const noexcept { return data_; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned width_bits_ = 1;
  bool signed_ = false;
  std::vector<std::int64_t> data_;
};

/// Shapes agree and elements are equal; the declared encodings may differ.
bool same_values(const IntMatrix& a, const IntMatrix& b);

/// Raw width_bits-wide encoding of a value (two's complement for
/// negatives), the bit pattern a bus of that width would carry.
std::uint64_t encode_bits(std::int64_t value, unsigned width_bits);

}  // namespace asysa
