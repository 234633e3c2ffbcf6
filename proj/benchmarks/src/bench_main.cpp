#include <benchmark/benchmark.h>

#include "mobiflow/centrality.hpp"
#include "mobiflow/cluster.hpp"
#include "mobiflow/geo.hpp"
#include "mobiflow/ingest.hpp"
#include "mobiflow/lagcorr.hpp"
#include "mobiflow/network.hpp"
#include "mobiflow/synth.hpp"

namespace {

using namespace mobiflow;

synth::PlantedFlowSpec planted_spec(std::size_t blocks, std::size_t block_size) {
    synth::PlantedFlowSpec spec;
    spec.block_sizes.assign(blocks, block_size);
    return spec;
}

void BM_parse_flow_records(benchmark::State& state) {
    const auto planted = synth::gen_planted_flow_network(
        planted_spec(static_cast<std::size_t>(state.range(0)), 10), 1);
    const std::string text = ingest::write_flow_csv(planted.table);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ingest::parse_flow_records(text));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_parse_flow_records)->Arg(2)->Arg(5);

void BM_build_week_network(benchmark::State& state) {
    const auto planted = synth::gen_planted_flow_network(
        planted_spec(static_cast<std::size_t>(state.range(0)), 10), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            network::build_week_network(planted.table, planted.table.weeks().front()));
    }
}
BENCHMARK(BM_build_week_network)->Arg(2)->Arg(5);

void BM_label_propagation(benchmark::State& state) {
    const auto planted = synth::gen_planted_flow_network(
        planted_spec(static_cast<std::size_t>(state.range(0)), 10), 3);
    const auto net =
        network::build_week_network(planted.table, planted.table.weeks().front());
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster::label_propagation(net, ++seed));
    }
}
BENCHMARK(BM_label_propagation)->Arg(3)->Arg(6);

void BM_betweenness(benchmark::State& state) {
    const auto planted = synth::gen_planted_flow_network(
        planted_spec(static_cast<std::size_t>(state.range(0)), 10), 4);
    const auto net =
        network::build_week_network(planted.table, planted.table.weeks().front());
    for (auto _ : state) {
        benchmark::DoNotOptimize(centrality::betweenness(net));
    }
}
BENCHMARK(BM_betweenness)->Arg(3)->Arg(6);

void BM_best_lag(benchmark::State& state) {
    synth::LaggedPairSpec spec;
    spec.length = static_cast<int>(state.range(0));
    spec.noise_sigma = 0.3;
    const auto pair = synth::gen_lagged_pair(spec, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lagcorr::best_lag(pair.mobility, pair.awareness));
    }
}
BENCHMARK(BM_best_lag)->Arg(120)->Arg(480);

void BM_haversine(benchmark::State& state) {
    const GeoPoint a{39.7392, -104.9903};
    const GeoPoint b{32.3182, -86.9023};
    for (auto _ : state) {
        benchmark::DoNotOptimize(geo::haversine_km(a, b));
    }
}
BENCHMARK(BM_haversine);

} // namespace

BENCHMARK_MAIN();
