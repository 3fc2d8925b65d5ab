#include <random>

#include <benchmark/benchmark.h>

#include "absmin/absmin.hpp"

namespace {

using absmin::Controller;
using absmin::Plant;
using absmin::Poly;

const std::vector<double> kXYStar{7.0, 4.647580015448900, 0.216, 1.673128805561604, -8.6};

Poly random_poly(int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<absmin::Complex> c(degree + 1);
  for (auto& v : c) v = normal(rng);
  c.back() = 1.0;
  return Poly(c);
}

void BM_Roots(benchmark::State& state) {
  const Poly p = random_poly(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(absmin::roots(p));
}
BENCHMARK(BM_Roots)->Arg(6)->Arg(12)->Arg(24)->Arg(48);

void BM_RootsClustered(benchmark::State& state) {
  const Poly p = absmin::clustered_poly(-0.7745966692414834, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(absmin::roots(p));
}
BENCHMARK(BM_RootsClustered)->Arg(6)->Arg(7);

void BM_Hurwitz(benchmark::State& state) {
  const Poly p = absmin::clustered_poly(-1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(absmin::is_hurwitz_stable(p));
}
BENCHMARK(BM_Hurwitz)->Arg(6)->Arg(12)->Arg(24);

void BM_ClusterSearch(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  for (auto _ : state) benchmark::DoNotOptimize(absmin::cluster_all_poles(plant, 2));
}
BENCHMARK(BM_ClusterSearch)->Unit(benchmark::kMillisecond);

void BM_PlacePoles(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  const Poly target = absmin::clustered_poly(-2.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(absmin::place_poles(plant, 3, target));
}
BENCHMARK(BM_PlacePoles);

void BM_Gradient(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  const Controller k = Controller::from_params(2, std::vector<double>{1.0, 2.0, 0.5, -1.0, 3.0});
  for (auto _ : state) benchmark::DoNotOptimize(absmin::abscissa_gradient(plant, k));
}
BENCHMARK(BM_Gradient);

void BM_Optimize(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  const Controller k = Controller::from_params(2, std::vector<double>{1.0, 2.0, 0.5, -1.0, 3.0});
  absmin::OptOptions opts;
  opts.max_iters = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(absmin::minimize_abscissa(plant, 2, k, opts));
}
BENCHMARK(BM_Optimize)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  const Controller k = Controller::from_params(2, kXYStar);
  for (auto _ : state) benchmark::DoNotOptimize(absmin::certify_local_min(plant, k));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_StepResponse(benchmark::State& state) {
  const Plant plant = Plant::two_mass_spring();
  const Controller k = Controller::from_params(2, kXYStar);
  for (auto _ : state) benchmark::DoNotOptimize(absmin::step_response(plant, k));
}
BENCHMARK(BM_StepResponse)->Unit(benchmark::kMillisecond);

void BM_PseudozeroGrid(benchmark::State& state) {
  const Poly p = absmin::clustered_poly(-0.7745966692414834, 6);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(absmin::pseudozero_grid(p, {-1.5, 0.0, -0.5, 0.5}, n, n, 1e-4));
}
BENCHMARK(BM_PseudozeroGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
