#include <benchmark/benchmark.h>

#include "trifilt/filtration.hpp"
#include "trifilt/geometry.hpp"
#include "trifilt/io.hpp"
#include "trifilt/pipeline.hpp"
#include "trifilt/triangulation.hpp"

namespace {

using namespace trifilt;

io::Prepared prepared(const std::string& dataset, const std::string& function, std::size_t n) {
  const auto data = io::generate_dataset(dataset, n, 1);
  io::InputData input{data.dim, data.points, interlevel(io::compute_function(data, function, 1))};
  return io::prepare(input, {.seed = 1});
}

std::vector<Coords> random_cloud(int dim, std::size_t n, std::uint64_t seed) {
  io::UniformSource rng(seed);
  std::vector<Coords> pts(n);
  for (auto& p : pts)
    for (int k = 0; k < dim; ++k) p[static_cast<std::size_t>(k)] = rng.next(0, 1);
  return pts;
}

void BM_Orientation3(benchmark::State& state) {
  const auto pts = random_cloud(3, 64, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::array<Coords, 4> cell{pts[i % 64], pts[(i + 1) % 64], pts[(i + 2) % 64], pts[(i + 3) % 64]};
    benchmark::DoNotOptimize(geom::orientation(3, cell));
    ++i;
  }
}
BENCHMARK(BM_Orientation3);

void BM_InSphere3(benchmark::State& state) {
  const auto pts = random_cloud(3, 64, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    std::array<Coords, 4> cell{pts[i % 64], pts[(i + 1) % 64], pts[(i + 2) % 64], pts[(i + 3) % 64]};
    if (geom::orientation(3, cell) < 0) std::swap(cell[0], cell[1]);
    benchmark::DoNotOptimize(geom::in_sphere(3, cell, pts[(i + 4) % 64]));
    ++i;
  }
}
BENCHMARK(BM_InSphere3);

// Five points in R^3, the first `range(0)` of them on the sphere. With two or
// more boundary points some groups are infeasible, which takes the slow path.
void BM_ConstrainedBall3(benchmark::State& state) {
  const auto nb = static_cast<std::size_t>(state.range(0));
  const auto pts = random_cloud(3, 60, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t o = (i % 10) * 6;
    const std::span<const Coords> boundary(pts.data() + o, nb);
    const std::span<const Coords> enclosed(pts.data() + o + nb, 5 - nb);
    auto ball = geom::constrained_ball(3, boundary, enclosed);
    benchmark::DoNotOptimize(ball ? ball->radius() : 0.0);
    ++i;
  }
}
BENCHMARK(BM_ConstrainedBall3)->DenseRange(0, 3);

void BM_Insertion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto prep = prepared("cube", "random", n);
  for (auto _ : state) {
    Triangulation tri(prep.cloud);
    for (PointId p = 0; p < static_cast<PointId>(prep.cloud.num_data()); ++p) tri.insert(p);
    benchmark::DoNotOptimize(tri.num_cells());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Insertion)->RangeMultiplier(4)->Range(64, 4096)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Pipeline2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto prep = prepared("circle", "height", n);
  for (auto _ : state) {
    const auto result = run_pipeline(prep.cloud, prep.f, Strategy::Local);
    benchmark::DoNotOptimize(result.incr.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pipeline2D)->RangeMultiplier(2)->Range(50, 400)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Births3D(benchmark::State& state) {
  const auto prep = prepared("sphere", "codensity", static_cast<std::size_t>(state.range(0)));
  const auto incr = compute_incr(prep.cloud, prep.f, Strategy::Local);
  for (auto _ : state) {
    const auto births = compute_births(incr, prep.cloud, prep.f);
    benchmark::DoNotOptimize(births.level(0).size());
  }
  state.counters["simplices"] = static_cast<double>(incr.size());
}
BENCHMARK(BM_Births3D)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
