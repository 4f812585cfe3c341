#include <benchmark/benchmark.h>

#include "willmore/quartic.hpp"
#include "willmore/shape.hpp"

namespace {

using namespace willmore;

void BM_JetMul(benchmark::State& state) {
  const auto x = Jet2<double>::variable(0.7, 0, 5);
  const auto y = Jet2<double>::variable(-0.3, 1, 5);
  const Jet2<double> f = jet_exp(x) * jet_cos(y);
  const Jet2<double> g = jet_sinh(y) + x;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jet_mul(f, g));
  }
}
BENCHMARK(BM_JetMul);

void BM_JetElementary(benchmark::State& state) {
  const auto x = Jet2<double>::variable(0.7, 0, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jet_exp(jet_cos(x)));
  }
}
BENCHMARK(BM_JetElementary);

void BM_ShapeAt(benchmark::State& state) {
  const ImmersionChart ch = zoo("clifford-torus-projected");
  double u = 0.3;
  for (auto _ : state) {
    u += 1e-3;
    benchmark::DoNotOptimize(shape_at(ch, u, 1.1, int(state.range(0))));
  }
}
BENCHMARK(BM_ShapeAt)->Arg(2)->Arg(3)->Arg(5);

void BM_QuarticAt(benchmark::State& state) {
  const ImmersionChart ch = zoo("clifford-torus-projected");
  double u = 0.3;
  for (auto _ : state) {
    u += 1e-3;
    benchmark::DoNotOptimize(quartic_at(ch, u, 1.1));
  }
}
BENCHMARK(BM_QuarticAt);

void BM_QuarticAtExtended(benchmark::State& state) {
  const ImmersionChart ch = zoo("clifford-torus-projected");
  double u = 0.3;
  for (auto _ : state) {
    u += 1e-3;
    benchmark::DoNotOptimize(quartic_at(ch, u, 1.1, Precision::Extended));
  }
}
BENCHMARK(BM_QuarticAtExtended);

void BM_Energies(benchmark::State& state) {
  const ImmersionChart ch = zoo("inverted-catenoid");
  const int n = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energies(ch, {n, n}));
  }
}
BENCHMARK(BM_Energies)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
