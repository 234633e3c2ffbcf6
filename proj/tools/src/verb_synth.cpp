#include <iostream>

#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/ingest.hpp"
#include "mobiflow/rng.hpp"
#include "mobiflow/synth.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {
namespace {

using nlohmann::json;

nlohmann::ordered_json clusters_json(const cluster::Partition& partition,
                                     const std::vector<std::string>& regions) {
    nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
    for (const auto& group : partition.groups()) {
        nlohmann::ordered_json members = nlohmann::ordered_json::array();
        for (const std::size_t node : group) members.push_back(regions[node]);
        clusters.push_back(std::move(members));
    }
    return clusters;
}

template <typename T>
T spec_value(const json& spec, const char* key, T fallback) {
    if (!spec.contains(key)) return fallback;
    try {
        return spec.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("spec key '") + key + "' has the wrong type");
    }
}

template <typename T>
T spec_required(const json& spec, const char* key) {
    if (!spec.contains(key)) {
        throw ValidationError(std::string("spec is missing required key '") + key + "'");
    }
    try {
        return spec.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("spec key '") + key + "' has the wrong type");
    }
}

synth::PlantedFlowSpec parse_planted(const json& spec, RunManifest& manifest) {
    synth::PlantedFlowSpec planted;
    planted.week_start = Date::parse(spec_value<std::string>(spec, "week_start", "2020-03-01"));
    planted.block_sizes = spec_required<std::vector<std::size_t>>(spec, "blocks");
    planted.intra_flow = spec_value(spec, "intra_flow", planted.intra_flow);
    planted.inter_flow = spec_value(spec, "inter_flow", planted.inter_flow);
    planted.geo_spread_km = spec_value(spec, "geo_spread_km", planted.geo_spread_km);
    if (spec.contains("geo_centers")) {
        const auto pairs = spec_required<std::vector<std::vector<double>>>(spec, "geo_centers");
        for (const auto& pair : pairs) {
            if (pair.size() != 2) {
                throw ValidationError("geo_centers entries must be [lat, lon] pairs");
            }
            planted.geo_centers.push_back({pair[0], pair[1]});
        }
    }
    manifest.set_parameter("week_start", planted.week_start.to_iso());
    manifest.set_parameter("blocks", planted.block_sizes);
    manifest.set_parameter("intra_flow", planted.intra_flow);
    manifest.set_parameter("inter_flow", planted.inter_flow);
    manifest.set_parameter("geo_spread_km", planted.geo_spread_km);
    if (!planted.geo_centers.empty()) {
        nlohmann::ordered_json centers = nlohmann::ordered_json::array();
        for (const auto& c : planted.geo_centers) centers.push_back({c.lat, c.lon});
        manifest.set_parameter("geo_centers", std::move(centers));
    }
    return planted;
}

void synth_lagged(const json& spec, std::uint64_t seed, const SynthOpts& opts,
                  RunManifest& manifest) {
    const auto regions = spec_value<std::size_t>(spec, "regions", 8);
    const int length = spec_value(spec, "length", 120);
    const int lag_min = spec_value(spec, "lag_min", 11);
    const int lag_max = spec_value(spec, "lag_max", 18);
    const double noise_sigma = spec_value(spec, "noise_sigma", 0.5);
    const Date start = Date::parse(spec_value<std::string>(spec, "start", "2020-01-13"));
    if (regions == 0) throw ValidationError("spec needs at least 1 region");
    if (lag_min < 0 || lag_min > lag_max) {
        throw ValidationError("spec needs 0 <= lag_min <= lag_max");
    }
    manifest.set_parameter("regions", regions);
    manifest.set_parameter("length", length);
    manifest.set_parameter("lag_min", lag_min);
    manifest.set_parameter("lag_max", lag_max);
    manifest.set_parameter("noise_sigma", noise_sigma);
    manifest.set_parameter("start", start.to_iso());

    const int span = lag_max - lag_min + 1;
    // All mobility series start at the largest planted lag so the wide CSV
    // has one shared date grid.
    const Date mobility_start = start + lag_max;
    std::vector<TimeSeries> mobility;
    std::vector<TimeSeries> awareness;
    nlohmann::ordered_json truth_regions = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < regions; ++i) {
        synth::LaggedPairSpec pair_spec;
        pair_spec.region = synth::region_name(i, regions);
        pair_spec.start = start;
        pair_spec.length = length;
        pair_spec.lag = lag_min + static_cast<int>(i % static_cast<std::size_t>(span));
        pair_spec.noise_sigma = noise_sigma;
        auto pair = synth::gen_lagged_pair(pair_spec, rng::derive_seed(seed, i));
        truth_regions.push_back({{"region", pair_spec.region}, {"lag", pair_spec.lag}});

        TimeSeries trimmed;
        trimmed.region_id = pair.mobility.region_id;
        trimmed.cadence = Cadence::daily;
        for (const auto& p : pair.mobility.points) {
            if (p.date >= mobility_start) trimmed.points.push_back(p);
        }
        mobility.push_back(std::move(trimmed));
        awareness.push_back(std::move(pair.awareness));
    }
    manifest.write_output(opts.out_dir, "mobility.csv", ingest::write_wide_csv(mobility));
    manifest.write_output(opts.out_dir, "trends.csv", ingest::write_wide_csv(awareness));
    nlohmann::ordered_json truth;
    truth["kind"] = "lagged-pair";
    truth["regions"] = std::move(truth_regions);
    manifest.write_output(opts.out_dir, "truth.json", truth.dump(2) + "\n");
}

void synth_planted(const json& spec, std::uint64_t seed, const SynthOpts& opts,
                   RunManifest& manifest) {
    const auto planted_spec = parse_planted(spec, manifest);
    const auto planted = synth::gen_planted_flow_network(planted_spec, seed);

    manifest.write_output(opts.out_dir, "flows.csv", ingest::write_flow_csv(planted.table));
    nlohmann::ordered_json truth;
    truth["kind"] = "planted";
    truth["week_start"] = planted_spec.week_start.to_iso();
    truth["clusters"] = clusters_json(planted.truth, planted.regions);
    manifest.write_output(opts.out_dir, "truth.json", truth.dump(2) + "\n");
}

void synth_two_week(const json& spec, std::uint64_t seed, const SynthOpts& opts,
                    RunManifest& manifest) {
    const auto planted_spec = parse_planted(spec, manifest);
    const double factor = spec_value(spec, "isolation_factor", 0.5);
    manifest.set_parameter("isolation_factor", factor);
    const auto pair = synth::gen_two_week_pair(planted_spec, factor, seed);

    std::vector<std::string> regions;
    for (const auto& [region, point] : pair.table.centroids) regions.push_back(region);
    manifest.write_output(opts.out_dir, "flows.csv", ingest::write_flow_csv(pair.table));
    nlohmann::ordered_json truth;
    truth["kind"] = "two-week";
    truth["week1"] = pair.week1.to_iso();
    truth["week2"] = pair.week2.to_iso();
    truth["isolation_factor"] = factor;
    truth["clusters"] = clusters_json(pair.truth, regions);
    manifest.write_output(opts.out_dir, "truth.json", truth.dump(2) + "\n");
}

void synth_panel(const json& spec, std::uint64_t seed, const SynthOpts& opts,
                 RunManifest& manifest) {
    synth::PanelSpec panel_spec;
    panel_spec.first_week =
        Date::parse(spec_value<std::string>(spec, "first_week", "2020-01-13"));
    panel_spec.regions = spec_value<std::size_t>(spec, "regions", 30);
    panel_spec.weekly_cluster_counts = spec_required<std::vector<std::size_t>>(spec, "counts");
    panel_spec.intra_flow = spec_value(spec, "intra_flow", panel_spec.intra_flow);
    panel_spec.inter_flow = spec_value(spec, "inter_flow", panel_spec.inter_flow);
    manifest.set_parameter("first_week", panel_spec.first_week.to_iso());
    manifest.set_parameter("regions", panel_spec.regions);
    manifest.set_parameter("counts", panel_spec.weekly_cluster_counts);
    manifest.set_parameter("intra_flow", panel_spec.intra_flow);
    manifest.set_parameter("inter_flow", panel_spec.inter_flow);

    const auto panel = synth::gen_panel(panel_spec, seed);

    std::vector<std::string> regions;
    for (std::size_t i = 0; i < panel_spec.regions; ++i) {
        regions.push_back(synth::region_name(i, panel_spec.regions));
    }
    manifest.write_output(opts.out_dir, "flows.csv", ingest::write_flow_csv(panel.table));
    nlohmann::ordered_json truth;
    truth["kind"] = "panel";
    auto& weeks = truth["weeks"] = nlohmann::ordered_json::array();
    for (std::size_t w = 0; w < panel.truths.size(); ++w) {
        weeks.push_back(
            {{"week_start", (panel_spec.first_week + 7 * static_cast<int>(w)).to_iso()},
             {"cluster_count", panel.truths[w].cluster_count()},
             {"clusters", clusters_json(panel.truths[w], regions)}});
    }
    manifest.write_output(opts.out_dir, "truth.json", truth.dump(2) + "\n");
}

} // namespace

int run_synth(const SynthOpts& opts) {
    RunManifest manifest("synth");

    const std::string spec_text = read_file(opts.spec_path);
    manifest.add_input("spec", opts.spec_path, spec_text);
    if (opts.echo_inputs) std::cout << spec_text;

    json spec;
    try {
        spec = json::parse(spec_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("spec file is not valid JSON: ") + e.what());
    }
    if (!spec.is_object()) throw ValidationError("spec must be a JSON object");

    const std::string kind = spec_required<std::string>(spec, "kind");
    const std::uint64_t seed =
        opts.seed_overridden ? opts.seed : spec_value<std::uint64_t>(spec, "seed", 42);
    manifest.set_seed(seed);
    manifest.set_parameter("kind", kind);

    if (kind == "lagged-pair") {
        synth_lagged(spec, seed, opts, manifest);
    } else if (kind == "planted") {
        synth_planted(spec, seed, opts, manifest);
    } else if (kind == "two-week") {
        synth_two_week(spec, seed, opts, manifest);
    } else if (kind == "panel") {
        synth_panel(spec, seed, opts, manifest);
    } else {
        throw ValidationError("unknown synth kind '" + kind + "'");
    }
    manifest.save(opts.out_dir);
    return manifest.flagged() ? 1 : 0;
}

} // namespace mobiflow::cli
