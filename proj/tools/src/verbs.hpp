#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "mobiflow/centrality.hpp"
#include "mobiflow/cluster.hpp"
#include "mobiflow/flow_table.hpp"
#include "mobiflow/network.hpp"

namespace mobiflow::cli {

class RunManifest;

std::string read_file(const std::filesystem::path& path);
FlowKind parse_flow_kind(const std::string& name);
centrality::ClosenessForm parse_closeness_form(const std::string& name);

struct LagOpts {
    std::string mobility_path;
    std::string trends_path;
    std::string out_dir;
    int max_shift = 30;
    double censored_value = 0.5;
    bool echo_inputs = false;
};
int run_lag(const LagOpts& opts);

struct ConsensusOpts {
    std::string flows_path;
    std::string out_dir;
    std::string week; ///< empty = every week in the table
    std::string flow_kind = "visitor";
    std::uint64_t seed = 42;
    std::size_t runs = 100;
    bool unweighted = false;
    int max_sweeps = 1000;
    bool echo_inputs = false;
};
int run_cluster(const ConsensusOpts& opts);

struct GeoOpts {
    std::string flows_path;
    std::string partitions_path;
    std::string out_dir;
    bool echo_inputs = false;
};
int run_geo(const GeoOpts& opts);

struct MetricsOpts {
    std::string flows_path;
    std::string out_dir;
    std::string before_week;
    std::string after_week;
    std::string flow_kind = "visitor";
    std::string closeness_form = "component-scaled";
    std::size_t top_k = 10;
    bool echo_inputs = false;
};
int run_metrics(const MetricsOpts& opts);

struct ExportOpts {
    std::string flows_path;
    std::string out_dir;
    std::string format = "dot";
    std::string week; ///< empty = every week in the table
    std::string flow_kind = "visitor";
    double threshold = 10000.0;
    bool echo_inputs = false;
};
int run_export(const ExportOpts& opts);

struct SynthOpts {
    std::string spec_path;
    std::string out_dir;
    std::uint64_t seed = 0;      ///< used only when seed_overridden
    bool seed_overridden = false; ///< --seed / MOBIFLOW_SEED beats the spec file
    bool echo_inputs = false;
};
int run_synth(const SynthOpts& opts);

/// Runs the consensus clustering pipeline over one week (when only_week is
/// set, which must exist in the table) or every week. Week w's seed is
/// derive_seed(base_seed, serial number of w), so a single-week run agrees
/// with the matching row of an all-weeks run. A week that fails to converge
/// is flagged and skipped.
void for_each_week_consensus(
    const WeeklyFlowTable& table, FlowKind kind, std::uint64_t base_seed,
    const cluster::ConsensusOptions& options, std::optional<Date> only_week,
    RunManifest& manifest,
    const std::function<void(Date, const network::FlowNetwork&,
                             const cluster::ClusterConsensus&)>& fn);

} // namespace mobiflow::cli
