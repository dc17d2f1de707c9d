// Parallel kernels against the serial reference implementations.
#include <benchmark/benchmark.h>

#include "landau_ee/assembly.hpp"
#include "landau_ee/parallel.hpp"
#include "landau_ee/reference.hpp"
#include "landau_ee/spectral.hpp"

using namespace landau_ee;

namespace {

const FieldFamily kField = FieldFamily::gaussian_bump(0.3, 1.0, {0.5, -0.25});
const PotentialFamily kPotential = PotentialFamily::gaussian(0.2, 1.0, {0.5, -0.25});

LandauBasisSpec frame(const benchmark::State& st) { return LandauBasisSpec(1.0, 3, static_cast<int>(st.range(0))); }

void BM_heps_parallel(benchmark::State& st) {
    const auto spec = frame(st);
    const auto grid = default_grid(spec);
    for (auto _ : st) benchmark::DoNotOptimize(assemble_heps(spec, kField, kPotential, grid).m.data());
    st.counters["threads"] = max_threads();
}

void BM_heps_serial(benchmark::State& st) {
    const auto spec = frame(st);
    const auto grid = default_grid(spec);
    for (auto _ : st) benchmark::DoNotOptimize(reference::heps_raw(spec, kField, kPotential, grid).data());
}

void BM_overlap_parallel(benchmark::State& st) {
    const auto spec = frame(st);
    const auto grid = default_grid(spec);
    for (auto _ : st) benchmark::DoNotOptimize(assemble_overlap(spec, RegionSpec::disk(1.0), 3.0, grid).m.data());
}

void BM_overlap_serial(benchmark::State& st) {
    const auto spec = frame(st);
    const auto grid = default_grid(spec);
    for (auto _ : st) benchmark::DoNotOptimize(reference::overlap(spec, RegionSpec::disk(1.0), 3.0, grid).data());
}

CMatrix full_h(const LandauBasisSpec& spec) { return assemble_full_h(spec, kField, kPotential, default_grid(spec)).m; }

void BM_riesz_parallel(benchmark::State& st) {
    const CMatrix h = full_h(frame(st));
    const auto c = ContourSpec::through({0.0, 2.0}, 64);
    for (auto _ : st) benchmark::DoNotOptimize(riesz_projection(h, c).data());
}

void BM_riesz_serial(benchmark::State& st) {
    const CMatrix h = full_h(frame(st));
    const auto c = ContourSpec::through({0.0, 2.0}, 64);
    for (auto _ : st) benchmark::DoNotOptimize(reference::riesz_projection(h, c).data());
}

}  // namespace

BENCHMARK(BM_heps_parallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_heps_serial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_overlap_parallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_overlap_serial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_riesz_parallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_riesz_serial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
