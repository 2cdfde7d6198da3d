// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary threads.

#include <benchmark/benchmark.h>

#include "texdens/excess_graph.hpp"
#include "texdens/reference.hpp"
#include "texdens/synth.hpp"

using namespace texdens;

namespace {

EdgeMap bench_mask()
{
    SynthSpec spec;
    spec.kind = SynthKind::Bernoulli;
    spec.width = 640;
    spec.height = 480;
    spec.density = 0.3;
    spec.seed = 1;
    return gen_mask(spec);
}

GrayImage bench_image()
{
    SynthSpec spec;
    spec.kind = SynthKind::Stripes;
    spec.width = 1280;
    spec.height = 720;
    spec.period = 6;
    return gen_image(spec);
}

void BM_GraphExcessSerial(benchmark::State& state)
{
    static const EdgeMap map = bench_mask();
    const PointSet points = sample_edge_points(map, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::graph_excess(map, points));
    state.counters["pairs"] = static_cast<double>(points.points.size() * (points.points.size() - 1) / 2);
}

void BM_GraphExcessParallel(benchmark::State& state)
{
    static const EdgeMap map = bench_mask();
    const PointSet points = sample_edge_points(map, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(graph_excess(map, points));
    state.counters["pairs"] = static_cast<double>(points.points.size() * (points.points.size() - 1) / 2);
}

void BM_GradientSerial(benchmark::State& state)
{
    static const GrayImage image = bench_image();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::compute_gradient(image, {0, 0, image.width(), image.height()}));
}

void BM_GradientParallel(benchmark::State& state)
{
    static const GrayImage image = bench_image();
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_gradient(image, {0, 0, image.width(), image.height()}));
}

} // namespace

BENCHMARK(BM_GraphExcessSerial)->Arg(32)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GraphExcessParallel)->Arg(32)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GradientSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GradientParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
