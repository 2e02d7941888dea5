// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "pnrecover/batch.hpp"

using namespace pnrecover;

namespace {

RunConfig benchConfig() {
    RunConfig c;
    c.sequences = 16;
    return c;
}

const std::vector<sim::SyntheticSequence>& sequences() {
    static const auto seqs = batch::generateBatchSerial(benchConfig());
    return seqs;
}

struct ClassifyFixture {
    PNTree tree;
    std::vector<FeatureVector> features;
};

const ClassifyFixture& classifyFixture() {
    static const ClassifyFixture f = [] {
        reference::OracleCaseParams p;
        p.dim = 64;
        auto oc = reference::makeOracleCase(1, 0, p);
        std::mt19937_64 rng(2);
        std::normal_distribution<double> n(0.0, 1.0);
        ClassifyFixture out{std::move(oc.tree), {}};
        for (int i = 0; i < 100000; ++i) {
            std::vector<double> v(p.dim);
            for (auto& x : v) x = n(rng);
            out.features.emplace_back(std::move(v));
        }
        return out;
    }();
    return f;
}

void BM_RunBatchSerial(benchmark::State& state) {
    const auto config = benchConfig();
    for (auto _ : state) benchmark::DoNotOptimize(batch::runBatchSerial(sequences(), config));
}

void BM_RunBatchParallel(benchmark::State& state) {
    const auto config = benchConfig();
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch::runBatch(sequences(), config, static_cast<int>(state.range(0))));
    }
}

void BM_ClassifySerial(benchmark::State& state) {
    const auto& f = classifyFixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch::classifyManySerial(f.tree, f.features, WalkDirection::negativePath));
    }
}

void BM_ClassifyParallel(benchmark::State& state) {
    const auto& f = classifyFixture();
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch::classifyMany(f.tree, f.features, WalkDirection::negativePath,
                                                     PositivePathMode::firstHit, static_cast<int>(state.range(0))));
    }
}

void BM_OracleCheckSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::oracleCheckSerial(10000, 7, {}));
}

void BM_OracleCheckParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch::oracleCheck(10000, 7, {}, static_cast<int>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(BM_RunBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunBatchParallel)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleCheckSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleCheckParallel)->Arg(2)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
