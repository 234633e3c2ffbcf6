#include <algorithm>
#include <iostream>
#include <map>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mobiflow/csv.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/geo.hpp"
#include "mobiflow/ingest.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {
namespace {

struct WeekPartition {
    Date week_start;
    std::vector<std::string> regions; ///< ascending
    cluster::Partition partition;
};

// Reads the representative partitions out of the cluster verb's
// partitions.json: each week entry carries cluster member lists.
std::vector<WeekPartition> parse_partitions(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("partitions file is not valid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("weeks") || !root["weeks"].is_array()) {
        throw ValidationError("partitions file must contain a 'weeks' array");
    }
    std::vector<WeekPartition> out;
    for (const auto& entry : root["weeks"]) {
        if (!entry.contains("week_start") || !entry.contains("representative")) {
            throw ValidationError("week entry needs 'week_start' and 'representative'");
        }
        WeekPartition wp;
        wp.week_start = Date::parse(entry["week_start"].get<std::string>());
        const auto& clusters = entry["representative"]["clusters"];
        if (!clusters.is_array() || clusters.empty()) {
            throw ValidationError("week " + wp.week_start.to_iso() +
                                  ": 'clusters' must be a non-empty array");
        }
        std::map<std::string, std::size_t> cluster_of;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            for (const auto& member : clusters[c]) {
                const std::string region = member.get<std::string>();
                if (!cluster_of.emplace(region, c).second) {
                    throw ValidationError("week " + wp.week_start.to_iso() + ": region '" +
                                          region + "' appears in two clusters");
                }
            }
        }
        std::vector<std::size_t> labels;
        for (const auto& [region, label] : cluster_of) {
            wp.regions.push_back(region);
            labels.push_back(label);
        }
        wp.partition = cluster::Partition::from_labels(labels);
        out.push_back(std::move(wp));
    }
    return out;
}

std::string format_optional(const std::optional<double>& value) {
    return value ? csv::format_double(*value) : std::string();
}

} // namespace

int run_geo(const GeoOpts& opts) {
    RunManifest manifest("geo");

    const std::string flows_text = read_file(opts.flows_path);
    const std::string partitions_text = read_file(opts.partitions_path);
    manifest.add_input("flows", opts.flows_path, flows_text);
    manifest.add_input("partitions", opts.partitions_path, partitions_text);

    const auto table = ingest::parse_flow_records(flows_text);
    const auto weeks = parse_partitions(partitions_text);
    if (opts.echo_inputs) {
        std::cout << ingest::flow_table_to_json(table) << '\n';
    }

    std::vector<csv::Row> rows;
    rows.push_back({"week_start", "cluster", "size", "medoid", "cluster_avg_km",
                    "country_avg_km", "reduction_pct"});
    nlohmann::ordered_json weeks_json = nlohmann::ordered_json::array();

    for (const auto& wp : weeks) {
        geo::ClusterDistanceReport report;
        try {
            report = geo::cluster_distance_report(wp.partition, wp.regions, table.centroids,
                                                  wp.week_start);
        } catch (const LookupError& e) {
            manifest.add_flag("week " + wp.week_start.to_iso() + ": " + e.what());
            continue;
        }

        nlohmann::ordered_json entry;
        entry["week_start"] = wp.week_start.to_iso();
        auto& clusters = entry["clusters"] = nlohmann::ordered_json::array();
        for (const auto& c : report.per_cluster) {
            rows.push_back({wp.week_start.to_iso(), std::to_string(c.cluster),
                            std::to_string(c.members.size()), c.medoid,
                            format_optional(c.cluster_avg_km),
                            csv::format_double(c.country_avg_km),
                            format_optional(c.reduction_pct)});
            nlohmann::ordered_json item;
            item["cluster"] = c.cluster;
            item["size"] = c.members.size();
            item["medoid"] = c.medoid;
            item["members"] = c.members;
            item["cluster_avg_km"] = c.cluster_avg_km ? nlohmann::ordered_json(*c.cluster_avg_km)
                                                      : nlohmann::ordered_json(nullptr);
            item["country_avg_km"] = c.country_avg_km;
            item["reduction_pct"] = c.reduction_pct ? nlohmann::ordered_json(*c.reduction_pct)
                                                    : nlohmann::ordered_json(nullptr);
            clusters.push_back(std::move(item));
        }
        // Singletons and degenerate geometry are expected analytical outcomes,
        // so they live in the report, not in the run's error flags.
        entry["flags"] = report.flags;
        weeks_json.push_back(std::move(entry));

        manifest.write_output(opts.out_dir,
                              "clusters_" + wp.week_start.to_iso() + ".geojson",
                              geo::clusters_to_geojson(wp.partition, wp.regions,
                                                       table.centroids) +
                                  "\n");
    }

    manifest.write_output(opts.out_dir, "cluster_distances.csv", csv::write(rows));
    nlohmann::ordered_json root;
    root["weeks"] = std::move(weeks_json);
    manifest.write_output(opts.out_dir, "cluster_distances.json", root.dump(2) + "\n");
    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
