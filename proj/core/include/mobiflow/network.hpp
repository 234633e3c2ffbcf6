#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mobiflow/flow_table.hpp"

namespace mobiflow::network {

struct FlowEdge {
    std::size_t u = 0; ///< smaller node index
    std::size_t v = 0;
    double weight = 0.0;
};

/// Undirected weekly flow graph. Nodes are the regions appearing in that
/// week's records, sorted by id; an edge {u, v} carries
/// flow(u->v) + flow(v->u). Self-loops contribute to a node's total flow but
/// never form edges.
class FlowNetwork {
public:
    FlowNetwork(Date week_start, FlowKind kind, std::vector<std::string> nodes,
                std::vector<FlowEdge> edges, std::vector<double> total_flow);

    Date week_start() const { return week_start_; }
    FlowKind kind() const { return kind_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<FlowEdge>& edges() const { return edges_; }
    /// Per node, (neighbor index, edge weight) pairs sorted by neighbor.
    const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const {
        return adjacency_;
    }
    /// Self-loop flow plus all outbound flow of the node's region that week.
    double total_flow(std::size_t node) const;
    /// Index of a region id; throws LookupError for unknown regions.
    std::size_t index_of(const std::string& region) const;

private:
    Date week_start_;
    FlowKind kind_;
    std::vector<std::string> nodes_;
    std::vector<FlowEdge> edges_;
    std::vector<double> total_flow_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

/// Builds the graph for one week of the table. Throws LookupError when the
/// table has no records for that week.
FlowNetwork build_week_network(const WeeklyFlowTable& table, Date week_start,
                               FlowKind kind = FlowKind::visitor);

/// Copy of the network keeping only edges with weight >= threshold. The node
/// set and total flows are unchanged, so nodes may become isolated.
FlowNetwork edge_threshold_subgraph(const FlowNetwork& net, double threshold);

/// Graphviz rendering, nodes and edges in deterministic order.
std::string to_dot(const FlowNetwork& net);

/// GeoJSON FeatureCollection: one Point per node, one LineString per edge.
/// Throws LookupError when a node has no centroid.
std::string to_geojson(const FlowNetwork& net, const std::map<std::string, GeoPoint>& centroids);

} // namespace mobiflow::network
