#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobiflow/network.hpp"

namespace mobiflow::centrality {

/// All path lengths use distance = 1 / edge weight, so heavier corridors are
/// shorter. Unreachable pairs have infinite distance.
std::vector<double> shortest_path_distances(const network::FlowNetwork& net, std::size_t source);

/// Sum of incident edge weights per node; isolated nodes score 0.
std::vector<double> weighted_degree(const network::FlowNetwork& net);

enum class ClosenessForm {
    /// (r / sum_d) * (r / (n - 1)) with r the number of reachable nodes:
    /// higher = closer, each component's score scaled by its relative size.
    component_scaled,
    /// sum_d / r, the mean shortest-path length to reachable nodes:
    /// lower = closer. Isolated nodes score 0 in both forms.
    raw_average,
};

/// Closeness per node; 0 for isolated nodes and single-node networks.
std::vector<double> closeness(const network::FlowNetwork& net,
                              ClosenessForm form = ClosenessForm::component_scaled);

/// Shortest-path betweenness with fractional counting on ties, normalized so
/// values fall in [0, 1]; identically 0 for fewer than 3 nodes.
std::vector<double> betweenness(const network::FlowNetwork& net);

/// Snapshot of all three metrics for one week's network. Regions are sorted
/// ascending and the value vectors are parallel to them.
struct CentralityReport {
    Date week_start;
    std::vector<std::string> regions;
    std::vector<double> degree;
    std::vector<double> closeness;
    std::vector<double> betweenness;
};

CentralityReport compute_report(const network::FlowNetwork& net,
                                ClosenessForm form = ClosenessForm::component_scaled);

enum class Metric { degree, closeness, betweenness };
std::string to_string(Metric metric);

/// (before - after) / before * 100. Throws ValidationError unless before > 0.
double reduction_pct(double before, double after);

/// One metric's movement between two weeks; pct is empty when the before
/// value is 0 (the drop is undefined, not zero).
struct MetricChange {
    double before = 0.0;
    double after = 0.0;
    std::optional<double> pct;
};

struct NodeReduction {
    std::string region;
    MetricChange degree;
    MetricChange closeness;
    MetricChange betweenness;

    const MetricChange& change(Metric metric) const;
};

/// Mean and population standard deviation of the defined reduction
/// percentages for one metric.
struct MetricStats {
    double mean_pct = 0.0;
    double std_pct = 0.0;
    std::size_t defined = 0;
};

struct ReductionReport {
    Date before;
    Date after;
    std::vector<NodeReduction> per_node; ///< region-ascending, intersection only
    MetricStats degree;
    MetricStats closeness;
    MetricStats betweenness;
    /// Notes for regions present in only one report and for zero-before
    /// metrics; empty when the comparison is clean.
    std::vector<std::string> flags;

    const MetricStats& stats(Metric metric) const;
};

/// Per-node percentage drops between two weeks, joined on the intersection of
/// the region sets. Regions missing from either side and zero-before metrics
/// are flagged; undefined percentages are excluded from the stats.
ReductionReport relative_reduction(const CentralityReport& before,
                                   const CentralityReport& after);

struct RankedReduction {
    std::string region;
    double before = 0.0;
    double after = 0.0;
    double pct = 0.0;
};

/// Nodes with the largest defined reduction percentage for one metric,
/// descending; ties break toward the smaller region id.
std::vector<RankedReduction> top_k_by_reduction(const ReductionReport& report, Metric metric,
                                                std::size_t k = 10);

} // namespace mobiflow::centrality
