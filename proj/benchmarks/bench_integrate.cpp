#include <nilequi/measure.hpp>
#include <nilequi/diagnostics.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

namespace {

using namespace nilequi;

std::shared_ptr<const Nilsystem> heisenberg_system() {
  return std::make_shared<Nilsystem>(NilAlgebra::heisenberg(1), DilationFamily::scalar(3));
}

std::shared_ptr<const MeasureSpec> parabola() {
  return std::make_shared<MeasureSpec>(
      MeasureSpec::curve(Curve::polynomial(3, std::vector<Vec<Rational>>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})));
}

void BM_IntegrateHeisenbergCurve(benchmark::State& state) {
  auto mu = dilate(parabola(), heisenberg_system(), 100.0);
  TestFunction f = [](const NilmanifoldPoint& p) {
    return std::complex<double>(std::cos(2.0 * std::numbers::pi * (p.coords[0] + p.coords[2])), 0.0);
  };
  IntegrationOptions opts;
  opts.panels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f, mu, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeylSumTorusParabola(benchmark::State& state) {
  auto sys = std::make_shared<Nilsystem>(NilAlgebra::abelian(2), DilationFamily::scalar(2));
  auto spec = std::make_shared<MeasureSpec>(
      MeasureSpec::curve(Curve::polynomial(2, std::vector<Vec<Rational>>{{0, 0}, {1, 0}, {0, 1}})));
  auto chi = make_character({2, 3});
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_sum(chi, dilate(spec, sys, t)));
}

void BM_StarDiscrepancy(benchmark::State& state) {
  std::vector<double> pts(static_cast<std::size_t>(state.range(0)));
  for (std::size_t n = 0; n < pts.size(); ++n) {
    const double x = static_cast<double>(n + 1) * std::numbers::sqrt2;
    pts[n] = x - std::floor(x);
  }
  for (auto _ : state) benchmark::DoNotOptimize(star_discrepancy_1d(pts));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_IntegrateHeisenbergCurve)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeylSumTorusParabola)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarDiscrepancy)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);
