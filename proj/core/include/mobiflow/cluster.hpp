#pragma once

#include <cstdint>
#include <vector>

#include "mobiflow/errors.hpp"
#include "mobiflow/network.hpp"

namespace mobiflow::cluster {

/// Node labels in canonical form: cluster ids are 0..k-1 in order of first
/// appearance when scanning nodes by index (nodes are sorted by region id,
/// so equal clusterings always canonicalize to equal label vectors).
struct Partition {
    std::vector<std::size_t> labels;

    std::size_t cluster_count() const;
    /// Member node indices per cluster id, each ascending.
    std::vector<std::vector<std::size_t>> groups() const;

    static Partition from_labels(const std::vector<std::size_t>& raw);
    bool operator==(const Partition&) const = default;
};

/// True when the two partitions group the nodes identically (labels aside).
/// Throws ValidationError on size mismatch.
bool is_stable(const Partition& a, const Partition& b);

struct LabelPropagationOptions {
    bool weighted = true;    ///< score neighbors by edge weight, not count
    int max_sweeps = 1000;
};

class NonConvergenceError : public ComputationError {
public:
    NonConvergenceError(const std::string& what, Partition last)
        : ComputationError(what), last_partition(std::move(last)) {}
    Partition last_partition;
};

/// Asynchronous label propagation. Every node starts in its own cluster;
/// each sweep visits nodes in a fresh seeded shuffle and moves each node to
/// the label with the largest total incident edge weight among its
/// neighbors, keeping the current label whenever it already attains the
/// maximum and drawing uniformly among the tied labels otherwise. Stops at
/// the first sweep with no changes; past max_sweeps throws
/// NonConvergenceError carrying the last state.
Partition label_propagation(const network::FlowNetwork& net, std::uint64_t seed,
                            const LabelPropagationOptions& options = {});

/// Newman modularity with edge weights: sum over clusters of
/// (internal weight / m) - (cluster degree / 2m)^2, where m is the total
/// edge weight. Zero for an edgeless network.
double weighted_modularity(const network::FlowNetwork& net, const Partition& partition);

struct ConsensusOptions {
    std::size_t runs = 100;
    LabelPropagationOptions lpa;
};

struct ClusterConsensus {
    std::size_t mode = 0;    ///< most frequent cluster count, ties to the smaller
    double mean = 0.0;
    double stddev = 0.0;     ///< population standard deviation
    std::vector<std::size_t> counts; ///< cluster count of each run, in run order
    Partition representative;        ///< highest-modularity partition among mode-count runs
    std::size_t representative_run = 0;
    double representative_modularity = 0.0;
};

/// Runs label propagation `runs` times with independent seeds derived from
/// base_seed and aggregates the cluster counts.
ClusterConsensus consensus_cluster(const network::FlowNetwork& net, std::uint64_t base_seed,
                                   const ConsensusOptions& options = {});

} // namespace mobiflow::cluster
