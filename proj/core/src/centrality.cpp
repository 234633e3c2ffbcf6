#include "mobiflow/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mobiflow/errors.hpp"

namespace mobiflow::centrality {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> shortest_path_distances(const network::FlowNetwork& net,
                                            std::size_t source) {
    if (source >= net.size()) {
        throw LookupError("source index " + std::to_string(source) + " out of range");
    }
    std::vector<double> dist(net.size(), kInf);
    dist[source] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0.0, source});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : net.adjacency()[u]) {
            const double nd = d + 1.0 / w;
            if (nd < dist[v]) {
                dist[v] = nd;
                queue.push({nd, v});
            }
        }
    }
    return dist;
}

std::vector<double> weighted_degree(const network::FlowNetwork& net) {
    std::vector<double> degree(net.size(), 0.0);
    for (const auto& e : net.edges()) {
        degree[e.u] += e.weight;
        degree[e.v] += e.weight;
    }
    return degree;
}

std::vector<double> closeness(const network::FlowNetwork& net, ClosenessForm form) {
    const std::size_t n = net.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    for (std::size_t u = 0; u < n; ++u) {
        const auto dist = shortest_path_distances(net, u);
        double sum = 0.0;
        std::size_t reachable = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u || dist[v] == kInf) continue;
            sum += dist[v];
            ++reachable;
        }
        if (reachable == 0 || sum == 0.0) continue;
        const double r = static_cast<double>(reachable);
        out[u] = form == ClosenessForm::component_scaled
                     ? (r / sum) * (r / static_cast<double>(n - 1))
                     : sum / r;
    }
    return out;
}

std::vector<double> betweenness(const network::FlowNetwork& net) {
    const std::size_t n = net.size();
    std::vector<double> score(n, 0.0);
    if (n < 3) return score;

    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> dist(n, kInf);
        std::vector<double> sigma(n, 0.0);
        std::vector<std::vector<std::size_t>> preds(n);
        std::vector<std::size_t> settled;
        std::vector<char> done(n, 0);
        dist[s] = 0.0;
        sigma[s] = 1.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        queue.push({0.0, s});
        while (!queue.empty()) {
            const auto [d, u] = queue.top();
            queue.pop();
            if (done[u]) continue;
            done[u] = 1;
            settled.push_back(u);
            for (const auto& [v, w] : net.adjacency()[u]) {
                const double nd = d + 1.0 / w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    preds[v].assign(1, u);
                    queue.push({nd, v});
                } else if (nd == dist[v] && !done[v]) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        std::vector<double> delta(n, 0.0);
        for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
            const std::size_t w = *it;
            for (const std::size_t p : preds[w]) {
                delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) score[w] += delta[w];
        }
    }
    // Each unordered pair is visited from both endpoints, so dividing the
    // accumulated sums by (n-1)(n-2) lands in [0, 1].
    const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
    for (double& v : score) v /= norm;
    return score;
}

CentralityReport compute_report(const network::FlowNetwork& net, ClosenessForm form) {
    CentralityReport report;
    report.week_start = net.week_start();
    report.regions = net.nodes();
    report.degree = weighted_degree(net);
    report.closeness = closeness(net, form);
    report.betweenness = betweenness(net);
    return report;
}

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::degree: return "degree";
        case Metric::closeness: return "closeness";
        case Metric::betweenness: return "betweenness";
    }
    throw ValidationError("unknown metric");
}

double reduction_pct(double before, double after) {
    if (!(before > 0.0)) {
        throw ValidationError("reduction undefined: before value " + std::to_string(before) +
                              " is not positive");
    }
    return (before - after) / before * 100.0;
}

const MetricChange& NodeReduction::change(Metric metric) const {
    switch (metric) {
        case Metric::degree: return degree;
        case Metric::closeness: return closeness;
        case Metric::betweenness: return betweenness;
    }
    throw ValidationError("unknown metric");
}

const MetricStats& ReductionReport::stats(Metric metric) const {
    switch (metric) {
        case Metric::degree: return degree;
        case Metric::closeness: return closeness;
        case Metric::betweenness: return betweenness;
    }
    throw ValidationError("unknown metric");
}

namespace {

MetricChange make_change(const std::string& region, const std::string& metric, double before,
                         double after, std::vector<std::string>& flags) {
    MetricChange change;
    change.before = before;
    change.after = after;
    if (before > 0.0) {
        change.pct = reduction_pct(before, after);
    } else {
        flags.push_back("undefined " + metric + " reduction for '" + region +
                        "': before value is 0");
    }
    return change;
}

MetricStats make_stats(const std::vector<NodeReduction>& nodes, Metric metric) {
    MetricStats stats;
    double sum = 0.0;
    for (const auto& node : nodes) {
        if (const auto& pct = node.change(metric).pct) {
            sum += *pct;
            ++stats.defined;
        }
    }
    if (stats.defined == 0) return stats;
    stats.mean_pct = sum / static_cast<double>(stats.defined);
    double var = 0.0;
    for (const auto& node : nodes) {
        if (const auto& pct = node.change(metric).pct) {
            const double d = *pct - stats.mean_pct;
            var += d * d;
        }
    }
    stats.std_pct = std::sqrt(var / static_cast<double>(stats.defined));
    return stats;
}

} // namespace

ReductionReport relative_reduction(const CentralityReport& before,
                                   const CentralityReport& after) {
    ReductionReport report;
    report.before = before.week_start;
    report.after = after.week_start;

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < before.regions.size() || j < after.regions.size()) {
        if (j == after.regions.size() ||
            (i < before.regions.size() && before.regions[i] < after.regions[j])) {
            report.flags.push_back("region '" + before.regions[i] +
                                   "' only in the before report");
            ++i;
            continue;
        }
        if (i == before.regions.size() || after.regions[j] < before.regions[i]) {
            report.flags.push_back("region '" + after.regions[j] +
                                   "' only in the after report");
            ++j;
            continue;
        }
        NodeReduction node;
        node.region = before.regions[i];
        node.degree = make_change(node.region, "degree", before.degree[i], after.degree[j],
                                  report.flags);
        node.closeness = make_change(node.region, "closeness", before.closeness[i],
                                     after.closeness[j], report.flags);
        node.betweenness = make_change(node.region, "betweenness", before.betweenness[i],
                                       after.betweenness[j], report.flags);
        report.per_node.push_back(std::move(node));
        ++i;
        ++j;
    }

    report.degree = make_stats(report.per_node, Metric::degree);
    report.closeness = make_stats(report.per_node, Metric::closeness);
    report.betweenness = make_stats(report.per_node, Metric::betweenness);
    return report;
}

std::vector<RankedReduction> top_k_by_reduction(const ReductionReport& report, Metric metric,
                                                std::size_t k) {
    std::vector<RankedReduction> ranked;
    for (const auto& node : report.per_node) {
        const MetricChange& change = node.change(metric);
        if (!change.pct) continue;
        ranked.push_back({node.region, change.before, change.after, *change.pct});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedReduction& a, const RankedReduction& b) {
        if (a.pct != b.pct) return a.pct > b.pct;
        return a.region < b.region;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

} // namespace mobiflow::centrality
