#include "cycle_oracle.hpp"

#include <algorithm>
#include <cstddef>

namespace asysa::test {
namespace {

// Elements streamed through row r, in schedule order: for every tile the
// activation column a(:, k_block * R + r), zero when that k row is padding.
struct RowStream {
  const IntMatrix* a;
  std::size_t m = 0, k = 0;
  int rows = 0, cols = 0;
  std::size_t k_blocks = 0, n_blocks = 0;

  std::size_t length() const { return k_blocks * n_blocks * m; }

  std::int64_t at(int r, std::int64_t i) const {
    const std::size_t tile = static_cast<std::size_t>(i) / m;
    const std::size_t mi = static_cast<std::size_t>(i) % m;
    const std::size_t kb = tile % k_blocks;
    const std::size_t kk = kb * static_cast<std::size_t>(rows) + static_cast<std::size_t>(r);
    if (kk >= k) return 0;
    return (*a)(mi, kk);
  }
};

}  // namespace

CycleOracleResult run_cycle_oracle(const IntMatrix& a, const IntMatrix& w,
                                   const ArrayConfig& cfg, DrainPolicy policy) {
  const int R = cfg.rows;
  const int C = cfg.cols;
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  const std::size_t n = w.cols();

  RowStream stream;
  stream.a = &a;
  stream.m = m;
  stream.k = k;
  stream.rows = R;
  stream.cols = C;
  stream.k_blocks = (k + static_cast<std::size_t>(R) - 1) / static_cast<std::size_t>(R);
  stream.n_blocks = (n + static_cast<std::size_t>(C) - 1) / static_cast<std::size_t>(C);

  CycleOracleResult result{BusActivity{}, IntMatrix(m, n, 62, true), {}, {}};
  const std::int64_t total = static_cast<std::int64_t>(stream.length());
  if (total == 0) return result;

  // Stationary weight for PE(r, c) while the element with stream index i
  // is in flight, looked up straight from the operand matrix.
  auto weight_at = [&](int r, int c, std::int64_t i) -> std::int64_t {
    i = std::clamp<std::int64_t>(i, 0, total - 1);
    const std::size_t tile = static_cast<std::size_t>(i) / m;
    const std::size_t kb = tile % stream.k_blocks;
    const std::size_t nb = tile / stream.k_blocks;
    const std::size_t kk = kb * static_cast<std::size_t>(R) + static_cast<std::size_t>(r);
    const std::size_t nn = nb * static_cast<std::size_t>(C) + static_cast<std::size_t>(c);
    if (kk >= k || nn >= n) return 0;
    return w(kk, nn);
  };

  auto port_value = [&](int r, std::int64_t g) -> std::int64_t {
    const std::int64_t i = g - r;
    if (i < 0) return 0;
    if (i < total) return stream.at(r, i);
    return policy == DrainPolicy::HoldLastValue ? stream.at(r, total - 1) : 0;
  };

  const std::size_t cells = static_cast<std::size_t>(R) * static_cast<std::size_t>(C);
  std::vector<std::int64_t> h(cells, 0), v(cells, 0);
  std::vector<std::int64_t> new_h(cells, 0), new_v(cells, 0);
  std::vector<std::int64_t> acc(m * n, 0);
  auto idx = [C](int r, int c) { return static_cast<std::size_t>(r) * static_cast<std::size_t>(C) + static_cast<std::size_t>(c); };

  const std::int64_t last_cycle = total + R + C + 2;
  for (std::int64_t g = 0; g <= last_cycle; ++g) {
    for (int r = 0; r < R; ++r) {
      new_h[idx(r, 0)] = port_value(r, g);
      for (int c = 1; c < C; ++c) new_h[idx(r, c)] = h[idx(r, c - 1)];
    }
    for (int r = 0; r < R; ++r) {
      for (int c = 0; c < C; ++c) {
        const std::int64_t upstream = r > 0 ? v[idx(r - 1, c)] : 0;
        new_v[idx(r, c)] = upstream + h[idx(r, c)] * weight_at(r, c, g - 1 - r - c);
      }
    }
    for (std::size_t s = 0; s < cells; ++s) {
      result.activity.h_toggles += hamming_toggles(h[s], new_h[s], cfg.bus_h);
      result.activity.v_toggles += hamming_toggles(v[s], new_v[s], cfg.bus_v);
    }
    for (int c = 0; c < C; ++c) {
      const std::int64_t i = g - R - c;  // stream index leaving the column bottom
      if (i < 0 || i >= total) continue;
      const std::size_t tile = static_cast<std::size_t>(i) / m;
      const std::size_t nb = tile / stream.k_blocks;
      const std::size_t nn = nb * static_cast<std::size_t>(C) + static_cast<std::size_t>(c);
      if (nn >= n) continue;
      acc[(static_cast<std::size_t>(i) % m) * n + nn] += new_v[idx(R - 1, c)];
    }
    h.swap(new_h);
    v.swap(new_v);
  }

  result.activity.h_opportunities = cells * static_cast<std::uint64_t>(total);
  result.activity.v_opportunities = cells * static_cast<std::uint64_t>(total);
  for (std::size_t mi = 0; mi < m; ++mi)
    for (std::size_t nn = 0; nn < n; ++nn) result.output.set(mi, nn, acc[mi * n + nn]);
  result.final_h = h;
  result.final_v = v;
  return result;
}

}  // namespace asysa::test
