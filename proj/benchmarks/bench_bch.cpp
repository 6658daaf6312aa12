#include <nilequi/bch.hpp>
#include <nilequi/unipotent.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace nilequi;

// Index into standard_realizations(): 0 is the smallest algebra.
const MatrixRealization& realization(std::int64_t i) {
  static const auto all = standard_realizations();
  return all.at(static_cast<std::size_t>(i));
}

Vec<Rational> random_rational(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  Vec<Rational> v(n);
  for (auto& x : v) {
    x = Rational(num(rng), static_cast<unsigned long>(den(rng)));
    x.canonicalize();
  }
  return v;
}

void BM_BchExact(benchmark::State& state) {
  const auto& real = realization(state.range(0));
  const auto g = real.algebra();
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(g.dim());
  auto x = random_rational(rng, n), y = random_rational(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(bch(g, x, y));
  state.SetLabel(real.name());
}

void BM_BchFloat(benchmark::State& state) {
  const auto& real = realization(state.range(0));
  const auto g = real.algebra();
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(g.dim());
  auto x = convert<double>(random_rational(rng, n)), y = convert<double>(random_rational(rng, n));
  for (auto _ : state) benchmark::DoNotOptimize(bch(g, x, y));
  state.SetLabel(real.name());
}

void BM_MatrixProductLog(benchmark::State& state) {
  const auto& real = realization(state.range(0));
  std::mt19937_64 rng(7);
  const auto n = static_cast<std::size_t>(real.algebra().dim());
  auto x = random_rational(rng, n), y = random_rational(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(real.product_log(x, y));
  state.SetLabel(real.name());
}

}  // namespace

BENCHMARK(BM_BchExact)->DenseRange(0, 4);
BENCHMARK(BM_BchFloat)->DenseRange(0, 4);
BENCHMARK(BM_MatrixProductLog)->DenseRange(0, 4);
