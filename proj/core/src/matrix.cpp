#include "asysa/matrix.hpp"

#include <string>

namespace asysa {

namespace {

void check_width(unsigned width_bits) {
  if (width_bits < 1 || width_bits > 63) {
    throw DomainError("matrix width must be between 1 and 63 bits, got " +
                      std::to_string(width_bits));
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, unsigned width_bits, bool is_signed)
    : rows_(rows), cols_(cols), width_bits_(width_bits), signed_(is_signed),
      data_(rows * cols, 0) {
  check_width(width_bits);
}

std::int64_t IntMatrix::min_value(unsigned width_bits, bool is_signed) {
  check_width(width_bits);
  return is_signed ? -(std::int64_t{1} << (width_bits - 1)) : 0;
}

std::int64_t IntMatrix::max_value(unsigned width_bits, bool is_signed) {
  check_width(width_bits);
  if (is_signed) {
    return (std::int64_t{1} << (width_bits - 1)) - 1;
  }
  return std::int64_t((std::uint64_t{1} << width_bits) - 1);
}

void IntMatrix::set(std::size_t row, std::size_t col, std::int64_t value) {
  const std::int64_t lo = min_value(width_bits_, signed_);
  const std::int64_t hi = max_value(width_bits_, signed_);
  if (value < lo || value > hi) {
    throw WidthViolationError(
        "element (" + std::to_string(row) + ", " + std::to_string(col) + ") value " +
        std::to_string(value) + " does not fit " + (signed_ ? "signed " : "unsigned ") +
        std::to_string(width_bits_) + "-bit range [" + std::to_string(lo) + ", " +
        std::to_string(hi) + "]");
  }
  data_[row * cols_ + col] = value;
}

bool same_values(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] != bv[i]) {
      return false;
    }
  }
  return true;
}

std::uint64_t encode_bits(std::int64_t value, unsigned width_bits) {
  const std::uint64_t mask =
      width_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_bits) - 1;
  return std::uint64_t(value) & mask;
}

}  // namespace asysa
