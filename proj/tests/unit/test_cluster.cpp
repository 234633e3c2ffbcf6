#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mobiflow/cluster.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/rng.hpp"
#include "mobiflow/synth.hpp"
#include "support/oracles.hpp"

using namespace mobiflow;
using oracles::Flow;

namespace {

/// Directed flows forming an undirected clique of weight `w` over [first, first+size).
void add_clique(std::vector<Flow>& flows, std::size_t first, std::size_t size, double w) {
    for (std::size_t i = first; i < first + size; ++i)
        for (std::size_t j = i + 1; j < first + size; ++j) flows.push_back({i, j, w});
}

/// Post-hoc check of the stopping rule: every node's label must attain the
/// maximum weighted frequency among its neighbors' labels.
bool labels_locally_maximal(const network::FlowNetwork& net, const cluster::Partition& p) {
    for (std::size_t u = 0; u < net.size(); ++u) {
        if (net.adjacency()[u].empty()) continue;
        std::map<std::size_t, double> score;
        for (const auto& [v, w] : net.adjacency()[u]) score[p.labels[v]] += w;
        double best = 0.0;
        for (const auto& [label, s] : score) best = std::max(best, s);
        const auto own = score.find(p.labels[u]);
        if (own == score.end() || own->second < best) return false;
    }
    return true;
}

} // namespace

TEST_CASE("partitions canonicalize by first appearance") {
    const auto p = cluster::Partition::from_labels({5, 5, 2, 7, 2});
    CHECK(p.labels == std::vector<std::size_t>{0, 0, 1, 2, 1});
    CHECK(p.cluster_count() == 3);
    const auto groups = p.groups();
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<std::size_t>{0, 1});
    CHECK(groups[1] == std::vector<std::size_t>{2, 4});
    CHECK(groups[2] == std::vector<std::size_t>{3});
}

TEST_CASE("is_stable compares groupings, not label values") {
    const auto a = cluster::Partition::from_labels({0, 0, 1, 1});
    const auto b = cluster::Partition::from_labels({9, 9, 4, 4});
    const auto c = cluster::Partition::from_labels({0, 1, 1, 1});
    CHECK(cluster::is_stable(a, b));
    CHECK(!cluster::is_stable(a, c));
    const auto short_p = cluster::Partition::from_labels({0, 1});
    CHECK_THROWS_AS(cluster::is_stable(a, short_p), ValidationError);
}

TEST_CASE("disconnected cliques split into their components for every seed") {
    std::vector<Flow> flows;
    add_clique(flows, 0, 4, 10.0);
    add_clique(flows, 4, 4, 10.0);
    const auto net = oracles::make_network(8, flows);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = cluster::label_propagation(net, seed);
        CHECK(p.cluster_count() == 2);
        CHECK(p.labels == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1});
        CHECK(labels_locally_maximal(net, p));
    }
}

TEST_CASE("single node and isolated nodes each form their own cluster") {
    const auto solo = oracles::make_network(1, {});
    CHECK(cluster::label_propagation(solo, 1).cluster_count() == 1);

    std::vector<Flow> flows;
    add_clique(flows, 0, 3, 5.0);
    add_clique(flows, 3, 3, 5.0);
    const auto with_isolated = oracles::make_network(7, flows); // node 6 has no edges
    const auto p = cluster::label_propagation(with_isolated, 3);
    CHECK(p.cluster_count() == 3);
    CHECK(p.labels[6] != p.labels[0]);
    CHECK(p.labels[6] != p.labels[3]);
}

TEST_CASE("label propagation is deterministic per seed and scale invariant") {
    const auto planted = synth::gen_planted_flow_network({.block_sizes = {6, 6, 6}}, 19);
    const auto net = network::build_week_network(planted.table, planted.table.weeks()[0]);
    const auto p1 = cluster::label_propagation(net, 99);
    const auto p2 = cluster::label_propagation(net, 99);
    CHECK(p1 == p2);

    // scaling all weights by a power of two cannot change any argmax
    WeeklyFlowTable scaled = planted.table;
    for (auto& r : scaled.records) {
        r.visitor_flow *= 1024.0;
        r.population_flow *= 1024.0;
    }
    const auto scaled_net = network::build_week_network(scaled, scaled.weeks()[0]);
    const auto p3 = cluster::label_propagation(scaled_net, 99);
    CHECK(p1 == p3);
}

TEST_CASE("planted three-block structure is recovered nearly always") {
    const auto planted = synth::gen_planted_flow_network(
        {.block_sizes = {10, 10, 10}, .intra_flow = 100.0, .inter_flow = 1.0}, 7);
    const auto net = network::build_week_network(planted.table, planted.table.weeks()[0]);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto p = cluster::label_propagation(net, seed);
        CHECK(labels_locally_maximal(net, p));
        if (p == planted.truth) ++hits;
    }
    CHECK(hits >= 99);
}

TEST_CASE("modularity on pinned partitions") {
    const auto pair = oracles::make_network(2, {{0, 1, 2.0}});
    CHECK(cluster::weighted_modularity(pair, cluster::Partition::from_labels({0, 0})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cluster::weighted_modularity(pair, cluster::Partition::from_labels({0, 1})) ==
          doctest::Approx(-0.5).epsilon(1e-12));

    const auto edgeless = oracles::make_network(3, {});
    CHECK(cluster::weighted_modularity(edgeless, cluster::Partition::from_labels({0, 1, 2})) ==
          0.0);

    // two well-separated cliques score high under their true split
    std::vector<Flow> flows;
    add_clique(flows, 0, 4, 100.0);
    add_clique(flows, 4, 4, 100.0);
    flows.push_back({0, 4, 1.0});
    const auto two = oracles::make_network(8, flows);
    const double split =
        cluster::weighted_modularity(two, cluster::Partition::from_labels({0, 0, 0, 0, 1, 1, 1, 1}));
    const double lumped =
        cluster::weighted_modularity(two, cluster::Partition::from_labels({0, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(split > 0.4);
    CHECK(lumped == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("consensus on deterministic regimes") {
    // complete graph with exactly equal weights always collapses to one cluster
    std::vector<Flow> flows;
    add_clique(flows, 0, 10, 100.0);
    const auto uniform = oracles::make_network(10, flows);
    const auto consensus = cluster::consensus_cluster(uniform, 42, {.runs = 50});
    CHECK(consensus.mode == 1);
    CHECK(consensus.mean == 1.0);
    CHECK(consensus.stddev == 0.0);
    CHECK(consensus.counts.size() == 50);
    CHECK(consensus.representative.cluster_count() == 1);

    // two disconnected cliques are always two clusters
    std::vector<Flow> split_flows;
    add_clique(split_flows, 0, 4, 10.0);
    add_clique(split_flows, 4, 4, 10.0);
    const auto split = oracles::make_network(8, split_flows);
    const auto split_consensus = cluster::consensus_cluster(split, 11, {.runs = 40});
    CHECK(split_consensus.mode == 2);
    CHECK(split_consensus.mean == 2.0);
    CHECK(split_consensus.stddev == 0.0);
}

TEST_CASE("consensus statistics on a planted five-block graph") {
    const auto planted = synth::gen_planted_flow_network(
        {.block_sizes = {9, 9, 9, 9, 9}, .intra_flow = 100.0, .inter_flow = 1.0}, 23);
    const auto net = network::build_week_network(planted.table, planted.table.weeks()[0]);
    const auto consensus = cluster::consensus_cluster(net, 5, {.runs = 100});
    CHECK(consensus.mode == 5);
    CHECK(consensus.mean >= 4.5);
    CHECK(consensus.mean <= 5.5);
    CHECK(consensus.representative.cluster_count() == 5);
    CHECK(consensus.representative_run < 100);
    CHECK(consensus.counts[consensus.representative_run] == 5);

    // representative must be a modularity maximizer among mode-count runs
    double best = -1.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto p = cluster::label_propagation(net, rng::derive_seed(5, i));
        if (p.cluster_count() == consensus.mode)
            best = std::max(best, cluster::weighted_modularity(net, p));
    }
    CHECK(consensus.representative_modularity == doctest::Approx(best).epsilon(1e-12));

    const auto again = cluster::consensus_cluster(net, 5, {.runs = 100});
    CHECK(again.counts == consensus.counts);
    CHECK(again.representative == consensus.representative);
}

TEST_CASE("sweep cap raises a non-convergence error carrying the last state") {
    std::vector<Flow> flows;
    add_clique(flows, 0, 4, 10.0);
    const auto net = oracles::make_network(4, flows);
    // nodes start with distinct labels, so the first sweep always changes
    // something on a clique; a one-sweep cap can never observe convergence
    try {
        cluster::label_propagation(net, 3, {.weighted = true, .max_sweeps = 1});
        FAIL("expected NonConvergenceError");
    } catch (const cluster::NonConvergenceError& e) {
        CHECK(e.last_partition.labels.size() == 4);
    }

    try {
        cluster::consensus_cluster(net, 3, {.runs = 2, .lpa = {.weighted = true, .max_sweeps = 1}});
        FAIL("expected NonConvergenceError");
    } catch (const cluster::NonConvergenceError& e) {
        CHECK(std::string(e.what()).find("run 0") != std::string::npos);
    }

    CHECK_THROWS_AS(cluster::label_propagation(net, 3, {.weighted = true, .max_sweeps = 0}),
                    ValidationError);
    CHECK_THROWS_AS(cluster::consensus_cluster(net, 3, {.runs = 0}), ValidationError);
}

TEST_CASE("unweighted mode ignores weights but still stabilizes") {
    std::vector<Flow> flows;
    add_clique(flows, 0, 5, 1.0);
    add_clique(flows, 5, 5, 1000.0);
    const auto net = oracles::make_network(10, flows);
    const auto p = cluster::label_propagation(net, 21, {.weighted = false, .max_sweeps = 1000});
    CHECK(p.cluster_count() == 2); // disconnected blocks regardless of weighting
    CHECK(p.labels[0] != p.labels[5]);
}
