#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "sumnorm/dataset_io.hpp"
#include "sumnorm/normal.hpp"
#include "sumnorm/pipeline.hpp"
#include "sumnorm/sim/distributions.hpp"
#include "sumnorm/sim/experiments.hpp"
#include "sumnorm/symmetry_tests.hpp"

namespace {

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sumnorm::std_normal_quantile(p));
        p = p < 0.999 ? p + 1e-3 : 1e-6;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_StatisticS3(benchmark::State& state) {
    int n = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sumnorm::statistic_s3(0, 1, 2, 5, 20, n));
        n = n < 5000 ? n + 1 : 10;
    }
}
BENCHMARK(BM_StatisticS3);

void BM_SummarizeSample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    sumnorm::sim::Engine engine(1);
    std::vector<double> buf(n);
    for (auto _ : state) {
        sumnorm::sim::draw(sumnorm::sim::lognormal(0, 1), engine, buf);
        benchmark::DoNotOptimize(sumnorm::sim::summarize_unsorted(buf));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SummarizeSample)->Arg(100)->Arg(1000);

void BM_LeptinPipeline(benchmark::State& state) {
    const auto studies = sumnorm::parse_studies(std::string(SUMNORM_DATA_DIR) + "/zhang2017_leptin.csv");
    for (auto _ : state) {
        benchmark::DoNotOptimize(sumnorm::run_pipeline(studies));
    }
}
BENCHMARK(BM_LeptinPipeline);

void BM_Type1Point(benchmark::State& state) {
    sumnorm::sim::ExperimentConfig cfg;
    cfg.n_grid = {static_cast<int>(state.range(0))};
    cfg.replicates = 1000;
    cfg.seed = 3;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sumnorm::sim::type1_curve(sumnorm::Scenario::S3, cfg));
    }
}
BENCHMARK(BM_Type1Point)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
