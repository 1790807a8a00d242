#include <benchmark/benchmark.h>

#include "gtensor/surface_scan.hpp"

using namespace gtensor;

namespace {

const MaterialModel& silicon() {
  static const MaterialModel m = load_material(std::string(GTENSOR_DATA_DIR) + "/Si.json");
  return m;
}

void bench_surface(benchmark::State& state, execution exec) {
  const RaySet rays{ray_sampling::icosphere, static_cast<int>(state.range(0)), {}};
  ScanConfig cfg;
  cfg.n_coarse = 50;
  size_t points = 0;
  for (auto _ : state) {
    const SurfaceCloud c = build_surface(silicon(), "split-off", which_det::gS, rays, cfg, exec);
    points = c.points.size();
    benchmark::DoNotOptimize(points);
  }
  state.counters["rays"] = static_cast<double>(ray_directions(rays).size());
  state.counters["points"] = static_cast<double>(points);
}

void bench_serial(benchmark::State& state) {
  bench_surface(state, execution::serial);
}

void bench_parallel(benchmark::State& state) {
  bench_surface(state, execution::parallel);
}

void bench_pair_det(benchmark::State& state) {
  const Vector3d k(0.01, 0.02, 0.03);
  for (auto _ : state) benchmark::DoNotOptimize(pair_det(silicon(), "split-off", k, which_det::gtot));
}

} // namespace

BENCHMARK(bench_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_pair_det)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
