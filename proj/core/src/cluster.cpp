#include "mobiflow/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "mobiflow/rng.hpp"

namespace mobiflow::cluster {

std::size_t Partition::cluster_count() const {
    std::size_t k = 0;
    for (const std::size_t label : labels) k = std::max(k, label + 1);
    return k;
}

std::vector<std::vector<std::size_t>> Partition::groups() const {
    std::vector<std::vector<std::size_t>> out(cluster_count());
    for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
    return out;
}

Partition Partition::from_labels(const std::vector<std::size_t>& raw) {
    Partition p;
    p.labels.resize(raw.size());
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto [it, inserted] = remap.emplace(raw[i], remap.size());
        p.labels[i] = it->second;
    }
    return p;
}

bool is_stable(const Partition& a, const Partition& b) {
    if (a.labels.size() != b.labels.size()) {
        throw ValidationError("partitions cover different node counts: " +
                              std::to_string(a.labels.size()) + " vs " +
                              std::to_string(b.labels.size()));
    }
    return Partition::from_labels(a.labels) == Partition::from_labels(b.labels);
}

Partition label_propagation(const network::FlowNetwork& net, std::uint64_t seed,
                            const LabelPropagationOptions& options) {
    if (options.max_sweeps < 1) throw ValidationError("max_sweeps must be at least 1");
    const std::size_t n = net.size();
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    rng::Engine engine(seed);
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        engine.shuffle(order);
        bool changed = false;
        for (const std::size_t u : order) {
            const auto& nbrs = net.adjacency()[u];
            if (nbrs.empty()) continue;
            std::map<std::size_t, double> score;
            for (const auto& [v, w] : nbrs) {
                score[labels[v]] += options.weighted ? w : 1.0;
            }
            double best = 0.0;
            for (const auto& [label, s] : score) best = std::max(best, s);
            std::vector<std::size_t> argmax;
            for (const auto& [label, s] : score) {
                if (s == best) argmax.push_back(label);
            }
            if (std::find(argmax.begin(), argmax.end(), labels[u]) != argmax.end()) continue;
            const std::size_t pick =
                argmax.size() == 1 ? argmax.front()
                                   : argmax[static_cast<std::size_t>(
                                         engine.below(static_cast<std::uint64_t>(argmax.size())))];
            labels[u] = pick;
            changed = true;
        }
        if (!changed) return Partition::from_labels(labels);
    }
    throw NonConvergenceError("label propagation did not settle within " +
                                  std::to_string(options.max_sweeps) + " sweeps",
                              Partition::from_labels(labels));
}

double weighted_modularity(const network::FlowNetwork& net, const Partition& partition) {
    if (partition.labels.size() != net.size()) {
        throw ValidationError("partition covers " + std::to_string(partition.labels.size()) +
                              " nodes, network has " + std::to_string(net.size()));
    }
    double m = 0.0;
    const std::size_t k = partition.cluster_count();
    std::vector<double> internal(k, 0.0);
    std::vector<double> degree(k, 0.0);
    for (const auto& e : net.edges()) {
        m += e.weight;
        degree[partition.labels[e.u]] += e.weight;
        degree[partition.labels[e.v]] += e.weight;
        if (partition.labels[e.u] == partition.labels[e.v]) {
            internal[partition.labels[e.u]] += e.weight;
        }
    }
    if (m == 0.0) return 0.0;
    double q = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        const double frac = degree[c] / (2.0 * m);
        q += internal[c] / m - frac * frac;
    }
    return q;
}

ClusterConsensus consensus_cluster(const network::FlowNetwork& net, std::uint64_t base_seed,
                                   const ConsensusOptions& options) {
    if (options.runs == 0) throw ValidationError("consensus needs at least 1 run");

    ClusterConsensus out;
    std::vector<Partition> partitions;
    partitions.reserve(options.runs);
    out.counts.reserve(options.runs);
    for (std::size_t i = 0; i < options.runs; ++i) {
        try {
            partitions.push_back(
                label_propagation(net, rng::derive_seed(base_seed, i), options.lpa));
        } catch (const NonConvergenceError& e) {
            throw NonConvergenceError("run " + std::to_string(i) + ": " + e.what(),
                                      e.last_partition);
        }
        out.counts.push_back(partitions.back().cluster_count());
    }

    std::map<std::size_t, std::size_t> freq;
    for (const std::size_t c : out.counts) ++freq[c];
    std::size_t best_freq = 0;
    for (const auto& [count, f] : freq) {
        if (f > best_freq) {
            best_freq = f;
            out.mode = count;
        }
    }

    double sum = 0.0;
    for (const std::size_t c : out.counts) sum += static_cast<double>(c);
    out.mean = sum / static_cast<double>(options.runs);
    double ss = 0.0;
    for (const std::size_t c : out.counts) {
        const double d = static_cast<double>(c) - out.mean;
        ss += d * d;
    }
    out.stddev = std::sqrt(ss / static_cast<double>(options.runs));

    bool found = false;
    for (std::size_t i = 0; i < options.runs; ++i) {
        if (out.counts[i] != out.mode) continue;
        const double q = weighted_modularity(net, partitions[i]);
        if (!found || q > out.representative_modularity) {
            found = true;
            out.representative = partitions[i];
            out.representative_run = i;
            out.representative_modularity = q;
        }
    }
    return out;
}

} // namespace mobiflow::cluster
