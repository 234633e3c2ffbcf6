#include <iostream>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mobiflow/csv.hpp"
#include "mobiflow/ingest.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {
namespace {

std::string centrality_csv(const centrality::CentralityReport& report) {
    std::vector<csv::Row> rows;
    rows.push_back({"region", "degree", "closeness", "betweenness"});
    for (std::size_t i = 0; i < report.regions.size(); ++i) {
        rows.push_back({report.regions[i], csv::format_double(report.degree[i]),
                        csv::format_double(report.closeness[i]),
                        csv::format_double(report.betweenness[i])});
    }
    return csv::write(rows);
}

std::string format_optional(const std::optional<double>& value) {
    return value ? csv::format_double(*value) : std::string();
}

nlohmann::ordered_json change_json(const centrality::MetricChange& change) {
    nlohmann::ordered_json out;
    out["before"] = change.before;
    out["after"] = change.after;
    out["pct"] = change.pct ? nlohmann::ordered_json(*change.pct) : nlohmann::ordered_json(nullptr);
    return out;
}

} // namespace

int run_metrics(const MetricsOpts& opts) {
    RunManifest manifest("metrics");
    manifest.set_parameter("flow_kind", opts.flow_kind);
    manifest.set_parameter("closeness_form", opts.closeness_form);
    manifest.set_parameter("before", opts.before_week);
    manifest.set_parameter("after", opts.after_week);
    manifest.set_parameter("top_k", opts.top_k);

    const std::string flows_text = read_file(opts.flows_path);
    manifest.add_input("flows", opts.flows_path, flows_text);
    const auto table = ingest::parse_flow_records(flows_text);
    if (opts.echo_inputs) {
        std::cout << ingest::flow_table_to_json(table) << '\n';
    }

    const FlowKind kind = parse_flow_kind(opts.flow_kind);
    const auto form = parse_closeness_form(opts.closeness_form);
    const Date before_week = Date::parse(opts.before_week);
    const Date after_week = Date::parse(opts.after_week);

    const auto net_before = network::build_week_network(table, before_week, kind);
    const auto net_after = network::build_week_network(table, after_week, kind);
    const auto report_before = centrality::compute_report(net_before, form);
    const auto report_after = centrality::compute_report(net_after, form);
    manifest.write_output(opts.out_dir, "centrality_" + before_week.to_iso() + ".csv",
                          centrality_csv(report_before));
    manifest.write_output(opts.out_dir, "centrality_" + after_week.to_iso() + ".csv",
                          centrality_csv(report_after));

    const auto reduction = centrality::relative_reduction(report_before, report_after);
    for (const auto& flag : reduction.flags) manifest.add_flag(flag);

    std::vector<csv::Row> node_rows;
    node_rows.push_back({"region", "degree_before", "degree_after", "degree_pct",
                         "closeness_before", "closeness_after", "closeness_pct",
                         "betweenness_before", "betweenness_after", "betweenness_pct"});
    for (const auto& node : reduction.per_node) {
        node_rows.push_back({node.region,
                             csv::format_double(node.degree.before),
                             csv::format_double(node.degree.after),
                             format_optional(node.degree.pct),
                             csv::format_double(node.closeness.before),
                             csv::format_double(node.closeness.after),
                             format_optional(node.closeness.pct),
                             csv::format_double(node.betweenness.before),
                             csv::format_double(node.betweenness.after),
                             format_optional(node.betweenness.pct)});
    }
    manifest.write_output(opts.out_dir, "reduction.csv", csv::write(node_rows));

    const auto metrics = {centrality::Metric::degree, centrality::Metric::closeness,
                          centrality::Metric::betweenness};

    std::vector<csv::Row> top_rows;
    top_rows.push_back({"metric", "rank", "region", "before", "after", "reduction_pct"});
    std::vector<csv::Row> stat_rows;
    stat_rows.push_back({"metric", "mean_pct", "std_pct", "defined"});
    nlohmann::ordered_json metrics_json = nlohmann::ordered_json::array();
    for (const centrality::Metric metric : metrics) {
        const std::string name = centrality::to_string(metric);
        const auto& stats = reduction.stats(metric);
        stat_rows.push_back({name, csv::format_double(stats.mean_pct),
                             csv::format_double(stats.std_pct),
                             std::to_string(stats.defined)});

        nlohmann::ordered_json entry;
        entry["metric"] = name;
        entry["mean_pct"] = stats.mean_pct;
        entry["std_pct"] = stats.std_pct;
        entry["defined"] = stats.defined;
        auto& top = entry["top"] = nlohmann::ordered_json::array();
        const auto ranked = centrality::top_k_by_reduction(reduction, metric, opts.top_k);
        for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
            const auto& e = ranked[rank];
            top_rows.push_back({name, std::to_string(rank + 1), e.region,
                                csv::format_double(e.before), csv::format_double(e.after),
                                csv::format_double(e.pct)});
            top.push_back({{"rank", rank + 1},
                           {"region", e.region},
                           {"before", e.before},
                           {"after", e.after},
                           {"reduction_pct", e.pct}});
        }
        metrics_json.push_back(std::move(entry));
    }
    manifest.write_output(opts.out_dir, "topk.csv", csv::write(top_rows));
    manifest.write_output(opts.out_dir, "metric_stats.csv", csv::write(stat_rows));

    nlohmann::ordered_json root;
    root["before"] = before_week.to_iso();
    root["after"] = after_week.to_iso();
    root["top_k"] = opts.top_k;
    auto& nodes = root["per_node"] = nlohmann::ordered_json::array();
    for (const auto& node : reduction.per_node) {
        nlohmann::ordered_json item;
        item["region"] = node.region;
        item["degree"] = change_json(node.degree);
        item["closeness"] = change_json(node.closeness);
        item["betweenness"] = change_json(node.betweenness);
        nodes.push_back(std::move(item));
    }
    root["metrics"] = std::move(metrics_json);
    root["flags"] = reduction.flags;
    manifest.write_output(opts.out_dir, "reduction.json", root.dump(2) + "\n");

    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
