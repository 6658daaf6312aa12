#include <nilequi/cantor.hpp>
#include <nilequi/counterexamples.hpp>

#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

namespace {

using namespace nilequi;

void BM_CantorFourierClosedForm(benchmark::State& state) {
  double alpha = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cantor_fourier(alpha, 0.5 * alpha));
    alpha += 1.0;
  }
}

void BM_CantorFourierEnumerated(benchmark::State& state) {
  const std::vector<std::pair<double, double>> freqs{{1.0, 0.0}, {3.0, 0.0}, {9.0, 1.0}, {27.0, -2.0}};
  const auto depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cantor_fourier_enumerated(freqs, depth));
}

void BM_CantorPsiExact(benchmark::State& state) {
  Rational u(12345, 59049UL);
  u.canonicalize();
  for (auto _ : state) benchmark::DoNotOptimize(cantor_psi_exact(u));
}

void BM_SelfSimilarityGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(self_similarity_grid(static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_CantorFourierClosedForm);
BENCHMARK(BM_CantorFourierEnumerated)->DenseRange(6, 14, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CantorPsiExact);
BENCHMARK(BM_SelfSimilarityGrid)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
