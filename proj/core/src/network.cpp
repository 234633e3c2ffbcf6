#include "mobiflow/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mobiflow/csv.hpp"
#include "mobiflow/errors.hpp"

namespace mobiflow::network {

FlowNetwork::FlowNetwork(Date week_start, FlowKind kind, std::vector<std::string> nodes,
                         std::vector<FlowEdge> edges, std::vector<double> total_flow)
    : week_start_(week_start),
      kind_(kind),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      total_flow_(std::move(total_flow)) {
    if (!std::is_sorted(nodes_.begin(), nodes_.end()) ||
        std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
        throw ValidationError("network nodes must be sorted and distinct");
    }
    if (total_flow_.size() != nodes_.size()) {
        throw ValidationError("total_flow size does not match node count");
    }
    adjacency_.resize(nodes_.size());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_) {
        if (e.u >= e.v || e.v >= nodes_.size()) {
            throw ValidationError("edge endpoints out of order or out of range");
        }
        if (e.weight <= 0.0) throw ValidationError("edge weights must be positive");
        if (!seen.emplace(e.u, e.v).second) throw ValidationError("duplicate edge");
        adjacency_[e.u].emplace_back(e.v, e.weight);
        adjacency_[e.v].emplace_back(e.u, e.weight);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

double FlowNetwork::total_flow(std::size_t node) const {
    if (node >= total_flow_.size()) {
        throw LookupError("node index " + std::to_string(node) + " out of range");
    }
    return total_flow_[node];
}

std::size_t FlowNetwork::index_of(const std::string& region) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), region);
    if (it == nodes_.end() || *it != region) {
        throw LookupError("unknown region '" + region + "'");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

FlowNetwork build_week_network(const WeeklyFlowTable& table, Date week_start, FlowKind kind) {
    std::set<std::string> region_set;
    for (const auto& r : table.records) {
        if (r.week_start != week_start) continue;
        region_set.insert(r.origin);
        region_set.insert(r.destination);
    }
    if (region_set.empty()) {
        throw LookupError("no records for week " + week_start.to_iso());
    }
    std::vector<std::string> nodes(region_set.begin(), region_set.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;

    std::vector<double> total(nodes.size(), 0.0);
    std::map<std::pair<std::size_t, std::size_t>, double> weight;
    for (const auto& r : table.records) {
        if (r.week_start != week_start) continue;
        const double f = flow_value(r, kind);
        const std::size_t o = index.at(r.origin);
        const std::size_t d = index.at(r.destination);
        total[o] += f;
        if (o != d) weight[{std::min(o, d), std::max(o, d)}] += f;
    }
    std::vector<FlowEdge> edges;
    edges.reserve(weight.size());
    for (const auto& [key, w] : weight) {
        if (w > 0.0) edges.push_back({key.first, key.second, w});
    }
    return FlowNetwork(week_start, kind, std::move(nodes), std::move(edges), std::move(total));
}

FlowNetwork edge_threshold_subgraph(const FlowNetwork& net, double threshold) {
    if (threshold <= 0.0) {
        throw ValidationError("threshold must be positive, got " + std::to_string(threshold));
    }
    std::vector<FlowEdge> kept;
    for (const auto& e : net.edges()) {
        if (e.weight >= threshold) kept.push_back(e);
    }
    std::vector<double> total(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) total[i] = net.total_flow(i);
    return FlowNetwork(net.week_start(), net.kind(), net.nodes(), std::move(kept),
                       std::move(total));
}

std::string to_dot(const FlowNetwork& net) {
    std::ostringstream out;
    out << "graph \"" << net.week_start().to_iso() << "\" {\n";
    for (std::size_t i = 0; i < net.size(); ++i) {
        out << "  \"" << net.nodes()[i] << "\" [total_flow="
            << csv::format_double(net.total_flow(i)) << "];\n";
    }
    for (const auto& e : net.edges()) {
        out << "  \"" << net.nodes()[e.u] << "\" -- \"" << net.nodes()[e.v]
            << "\" [weight=" << csv::format_double(e.weight) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_geojson(const FlowNetwork& net, const std::map<std::string, GeoPoint>& centroids) {
    auto centroid = [&](const std::string& region) -> const GeoPoint& {
        const auto it = centroids.find(region);
        if (it == centroids.end()) {
            throw LookupError("no centroid for region '" + region + "'");
        }
        return it->second;
    };

    nlohmann::ordered_json root;
    root["type"] = "FeatureCollection";
    auto& features = root["features"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < net.size(); ++i) {
        const GeoPoint& p = centroid(net.nodes()[i]);
        features.push_back({{"type", "Feature"},
                            {"geometry",
                             {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
                            {"properties",
                             {{"region", net.nodes()[i]},
                              {"total_flow", net.total_flow(i)}}}});
    }
    for (const auto& e : net.edges()) {
        const GeoPoint& a = centroid(net.nodes()[e.u]);
        const GeoPoint& b = centroid(net.nodes()[e.v]);
        features.push_back(
            {{"type", "Feature"},
             {"geometry",
              {{"type", "LineString"},
               {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}}},
             {"properties",
              {{"source", net.nodes()[e.u]},
               {"target", net.nodes()[e.v]},
               {"weight", e.weight}}}});
    }
    return root.dump(2);
}

} // namespace mobiflow::network
