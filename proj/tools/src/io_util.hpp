#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace asysa::cli {

/// Shortest decimal form that parses back to exactly the same double.
/// Keeps every emitted number lossless under round-trip.
std::string fmt_double(double value);

/// Fixed-point form with `digits` decimals, for SVG coordinates.
std::string fmt_fixed(double value, int digits);

/// Round to one decimal place, half away from zero.
double round_tenths(double value);

/// Worker count for per-layer parallelism: ASYSA_THREADS when set (minimum
/// 1), otherwise the hardware thread count, never more than n_items.
std::size_t thread_cap(std::size_t n_items);

/// The index-th output of the splitmix64 stream seeded with `seed`.
/// Used to derive independent per-layer generator seeds from one base
/// seed without any draw-order coupling between layers.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace asysa::cli
