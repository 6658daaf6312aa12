#include <nilequi/obstruction.hpp>
#include <nilequi/dilation.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace nilequi;

// A curve of degree `deg` in T^n whose coordinates are u, u^2, ..., u^deg repeated.
MeasureSpec moment_curve(int n, int deg) {
  std::vector<Vec<Rational>> coeffs(static_cast<std::size_t>(deg + 1), Vec<Rational>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(1 + i % deg)][static_cast<std::size_t>(i)] = 1;
  return MeasureSpec::curve(Curve::polynomial(n, coeffs));
}

void BM_ClassifyMomentCurve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = NilAlgebra::abelian(n);
  const auto A = torus_coefficients(DilationFamily::scalar(n), g);
  const auto spec = moment_curve(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(classify(spec, A, g));
}

void BM_PrimitiveCharacters(benchmark::State& state) {
  const auto h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primitive_characters(3, h));
}

}  // namespace

BENCHMARK(BM_ClassifyMomentCurve)->DenseRange(2, 6, 2);
BENCHMARK(BM_PrimitiveCharacters)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
