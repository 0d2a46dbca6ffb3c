#include "io_util.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace asysa::cli {

std::string fmt_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

double round_tenths(double value) {
  return std::round(value * 10.0) / 10.0;
}

std::size_t thread_cap(std::size_t n_items) {
  std::size_t cap = 0;
  if (const char* env = std::getenv("ASYSA_THREADS")) {
    cap = std::strtoull(env, nullptr, 10);
  }
  if (cap == 0) {
    cap = std::thread::hardware_concurrency();
  }
  if (cap == 0) {
    cap = 1;
  }
  return n_items < cap ? (n_items == 0 ? 1 : n_items) : cap;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64: state advances by the golden-ratio increment, so the
  // index-th output is mix(seed + (index + 1) * increment).
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace asysa::cli
