#include <iostream>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mobiflow/csv.hpp"
#include "mobiflow/geo.hpp"
#include "mobiflow/ingest.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {

int run_cluster(const ConsensusOpts& opts) {
    RunManifest manifest("cluster");
    manifest.set_seed(opts.seed);
    manifest.set_parameter("flow_kind", opts.flow_kind);
    manifest.set_parameter("runs", opts.runs);
    manifest.set_parameter("weighted", !opts.unweighted);
    manifest.set_parameter("max_sweeps", opts.max_sweeps);
    manifest.set_parameter("week", opts.week.empty() ? "all" : opts.week);

    const std::string flows_text = read_file(opts.flows_path);
    manifest.add_input("flows", opts.flows_path, flows_text);
    const auto table = ingest::parse_flow_records(flows_text);
    if (opts.echo_inputs) {
        std::cout << ingest::flow_table_to_json(table) << '\n';
    }

    cluster::ConsensusOptions options;
    options.runs = opts.runs;
    options.lpa.weighted = !opts.unweighted;
    options.lpa.max_sweeps = opts.max_sweeps;

    std::optional<Date> only_week;
    if (!opts.week.empty()) only_week = Date::parse(opts.week);

    std::vector<csv::Row> stats_rows;
    stats_rows.push_back({"week_start", "mode", "mean", "std"});
    nlohmann::ordered_json weeks_json = nlohmann::ordered_json::array();

    for_each_week_consensus(
        table, parse_flow_kind(opts.flow_kind), opts.seed, options, only_week, manifest,
        [&](Date week, const network::FlowNetwork& net,
            const cluster::ClusterConsensus& consensus) {
            stats_rows.push_back({week.to_iso(), std::to_string(consensus.mode),
                                  csv::format_double(consensus.mean),
                                  csv::format_double(consensus.stddev)});

            nlohmann::ordered_json entry;
            entry["week_start"] = week.to_iso();
            entry["runs"] = opts.runs;
            entry["mode"] = consensus.mode;
            entry["mean"] = consensus.mean;
            entry["std"] = consensus.stddev;
            entry["counts"] = consensus.counts;
            nlohmann::ordered_json rep;
            rep["run"] = consensus.representative_run;
            rep["modularity"] = consensus.representative_modularity;
            rep["cluster_count"] = consensus.representative.cluster_count();
            auto& clusters = rep["clusters"] = nlohmann::ordered_json::array();
            for (const auto& group : consensus.representative.groups()) {
                nlohmann::ordered_json members = nlohmann::ordered_json::array();
                for (const std::size_t node : group) members.push_back(net.nodes()[node]);
                clusters.push_back(std::move(members));
            }
            entry["representative"] = std::move(rep);
            weeks_json.push_back(std::move(entry));

            manifest.write_output(
                opts.out_dir, "clusters_" + week.to_iso() + ".geojson",
                geo::clusters_to_geojson(consensus.representative, net.nodes(),
                                         table.centroids) +
                    "\n");
        });

    manifest.write_output(opts.out_dir, "cluster_stats.csv", csv::write(stats_rows));
    nlohmann::ordered_json root;
    root["weeks"] = std::move(weeks_json);
    manifest.write_output(opts.out_dir, "partitions.json", root.dump(2) + "\n");
    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
