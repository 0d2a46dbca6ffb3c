#include <benchmark/benchmark.h>

#include <cstdint>

#include "asysa/matrix.hpp"
#include "asysa/model.hpp"
#include "asysa/sim.hpp"
#include "asysa/workload.hpp"

namespace {

struct Gemm {
  asysa::IntMatrix a;
  asysa::IntMatrix w;
};

Gemm make_gemm(std::size_t m, std::size_t k, std::size_t n, unsigned bits) {
  return {asysa::synth_activations(m, k, 0.5, bits, 1),
          asysa::synth_weights(k, n, bits, 2)};
}

// args: m, k, n, array side
void BM_RunWsMatmul(benchmark::State& state) {
  const auto side = int(state.range(3));
  const unsigned bits = 8;
  const asysa::ArrayConfig cfg(side, side, int(bits),
                               int(asysa::required_accumulator_width(bits, unsigned(side))));
  const Gemm gemm = make_gemm(std::size_t(state.range(0)), std::size_t(state.range(1)),
                              std::size_t(state.range(2)), bits);
  std::uint64_t cells = 0;
  for (auto _ : state) {
    const asysa::SimResult result = asysa::run_ws_matmul(gemm.a, gemm.w, cfg);
    benchmark::DoNotOptimize(result.activity.h_toggles);
    cells += result.activity.v_opportunities;
  }
  state.SetItemsProcessed(std::int64_t(cells));  // PE-cycles per second
}
BENCHMARK(BM_RunWsMatmul)
    ->Args({64, 64, 64, 8})
    ->Args({196, 256, 64, 32})
    ->Args({49, 1152, 128, 32});

void BM_ReferenceMatmul(benchmark::State& state) {
  const Gemm gemm = make_gemm(196, 256, 64, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::reference_matmul(gemm.a, gemm.w));
  }
}
BENCHMARK(BM_ReferenceMatmul);

void BM_SynthActivations(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::synth_activations(256, 196, 0.5, 16, 1));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * 256 * 196);
}
BENCHMARK(BM_SynthActivations);

void BM_Im2col(benchmark::State& state) {
  const asysa::LayerSpec layer("l", 3, 14, 14, 64, 64);
  const asysa::ConvInputShape shape = asysa::conv_input_shape(layer, 1, 1);
  const asysa::IntMatrix input = asysa::synth_activations(
      64, std::size_t(shape.height) * std::size_t(shape.width), 0.5, 8, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(asysa::im2col(input, layer));
  }
}
BENCHMARK(BM_Im2col);

}  // namespace

BENCHMARK_MAIN();
