#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "chebtree/algebra.hpp"
#include "chebtree/chop.hpp"
#include "chebtree/fun.hpp"
#include "chebtree/tree.hpp"

using namespace chebtree;

namespace {

NdArray random_values(std::vector<std::size_t> shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  NdArray v(std::move(shape));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = dist(gen);
  return v;
}

Box square() { return Box({Interval(-1, 1), Interval(-1, 1)}); }

void BM_ValuesToCoeffs2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const NdArray v = random_values({n, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(values_to_coeffs(v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_ValuesToCoeffs2D)->Arg(33)->Arg(65)->Arg(129);

void BM_ValuesToCoeffs3D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const NdArray v = random_values({n, n, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(values_to_coeffs(v));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_ValuesToCoeffs3D)->Arg(33)->Arg(65);

void BM_ClenshawPoint(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoeffTensor c{random_values({n, n}, 3)};
  const double x[2] = {0.3, -0.7};
  for (auto _ : state)
    benchmark::DoNotOptimize(clenshaw_eval(c, std::span<const double>(x, 2)));
}
BENCHMARK(BM_ClenshawPoint)->Arg(17)->Arg(65)->Arg(129);

void BM_LeafGridEval(benchmark::State& state) {
  const std::size_t n = 129, m = static_cast<std::size_t>(state.range(0));
  const ChebInterpolant leaf{CoeffTensor{random_values({n, n}, 4)}, square()};
  std::vector<std::vector<double>> axes(2);
  for (std::size_t i = 0; i < m; ++i)
    axes[0].push_back(-1.0 + 2.0 * static_cast<double>(i) / (m - 1));
  axes[1] = axes[0];
  for (auto _ : state) benchmark::DoNotOptimize(leaf.eval_grid(axes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * m));
}
BENCHMARK(BM_LeafGridEval)->Arg(50)->Arg(200);

void BM_Chop(benchmark::State& state) {
  std::vector<double> seq(129);
  for (int k = 0; k < 129; ++k) seq[k] = std::pow(0.7, k) + 1e-16;
  for (auto _ : state) benchmark::DoNotOptimize(chop(seq, 1e-14));
}
BENCHMARK(BM_Chop);

void BM_BuildCliff(benchmark::State& state) {
  BuildParams p;
  p.samples_per_dim = static_cast<std::size_t>(state.range(0));
  p.tol = 1e-12;
  auto f = [](std::span<const double> x) { return std::atan(25.0 * (x[0] + x[1] * x[1])); };
  for (auto _ : state) benchmark::DoNotOptimize(build(f, square(), p));
}
BENCHMARK(BM_BuildCliff)->Arg(17)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

void BM_EvalGridBuiltFun(benchmark::State& state) {
  BuildParams p;
  p.samples_per_dim = 65;
  p.tol = 1e-12;
  auto f = [](std::span<const double> x) { return std::atan(25.0 * (x[0] + x[1] * x[1])); };
  const PUFun fun = build(f, square(), p);
  const std::size_t m = 200;
  std::vector<std::vector<double>> axes(2);
  for (std::size_t i = 0; i < m; ++i)
    axes[0].push_back(-1.0 + 2.0 * static_cast<double>(i) / (m - 1));
  axes[1] = axes[0];
  for (auto _ : state) benchmark::DoNotOptimize(fun.eval_grid(axes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * m));
}
BENCHMARK(BM_EvalGridBuiltFun)->Unit(benchmark::kMillisecond);

void BM_ApplyBinaryAdd(benchmark::State& state) {
  BuildParams p;
  p.samples_per_dim = 17;
  p.tol = 1e-8;
  auto f1 = [](std::span<const double> x) { return std::atan(20.0 * x[0]); };
  auto f2 = [](std::span<const double> x) { return std::atan(20.0 * (x[0] + x[1])); };
  const PUFun a = build(f1, square(), p);
  const PUFun b = build(f2, square(), p);
  for (auto _ : state) benchmark::DoNotOptimize(apply_binary(BinaryOp::add, a, b, p));
}
BENCHMARK(BM_ApplyBinaryAdd)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
