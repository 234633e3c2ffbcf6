#include <iostream>

#include "manifest.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/ingest.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {

int run_export(const ExportOpts& opts) {
    RunManifest manifest("export");
    manifest.set_parameter("format", opts.format);
    manifest.set_parameter("flow_kind", opts.flow_kind);
    manifest.set_parameter("threshold", opts.threshold);
    manifest.set_parameter("week", opts.week.empty() ? "all" : opts.week);

    if (opts.format != "dot" && opts.format != "geojson") {
        throw ValidationError("unknown export format '" + opts.format + "'");
    }

    const std::string flows_text = read_file(opts.flows_path);
    manifest.add_input("flows", opts.flows_path, flows_text);
    const auto table = ingest::parse_flow_records(flows_text);
    if (opts.echo_inputs) {
        std::cout << ingest::flow_table_to_json(table) << '\n';
    }

    std::vector<Date> weeks;
    if (opts.week.empty()) {
        weeks = table.weeks();
    } else {
        weeks.push_back(Date::parse(opts.week));
    }

    const FlowKind kind = parse_flow_kind(opts.flow_kind);
    for (const Date week : weeks) {
        const auto net = network::edge_threshold_subgraph(
            network::build_week_network(table, week, kind), opts.threshold);
        if (opts.format == "dot") {
            manifest.write_output(opts.out_dir, "network_" + week.to_iso() + ".dot",
                                  network::to_dot(net));
        } else {
            manifest.write_output(opts.out_dir, "network_" + week.to_iso() + ".geojson",
                                  network::to_geojson(net, table.centroids) + "\n");
        }
    }

    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
