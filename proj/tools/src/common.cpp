#include <algorithm>
#include <fstream>
#include <sstream>

#include "manifest.hpp"
#include "mobiflow/errors.hpp"
#include "mobiflow/rng.hpp"
#include "verbs.hpp"

namespace mobiflow::cli {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

FlowKind parse_flow_kind(const std::string& name) {
    if (name == "visitor") return FlowKind::visitor;
    if (name == "population") return FlowKind::population;
    throw ValidationError("unknown flow kind '" + name + "'");
}

centrality::ClosenessForm parse_closeness_form(const std::string& name) {
    if (name == "component-scaled") return centrality::ClosenessForm::component_scaled;
    if (name == "raw-average") return centrality::ClosenessForm::raw_average;
    throw ValidationError("unknown closeness form '" + name + "'");
}

void for_each_week_consensus(
    const WeeklyFlowTable& table, FlowKind kind, std::uint64_t base_seed,
    const cluster::ConsensusOptions& options, std::optional<Date> only_week,
    RunManifest& manifest,
    const std::function<void(Date, const network::FlowNetwork&,
                             const cluster::ClusterConsensus&)>& fn) {
    auto weeks = table.weeks();
    if (only_week) {
        if (std::find(weeks.begin(), weeks.end(), *only_week) == weeks.end()) {
            throw LookupError("no records for week " + only_week->to_iso());
        }
        weeks = {*only_week};
    }
    for (const Date week : weeks) {
        const auto net = network::build_week_network(table, week, kind);
        try {
            const auto consensus = cluster::consensus_cluster(
                net, rng::derive_seed(base_seed, static_cast<std::uint64_t>(week.serial())),
                options);
            fn(week, net, consensus);
        } catch (const cluster::NonConvergenceError& e) {
            manifest.add_flag("week " + week.to_iso() + ": " + e.what());
        }
    }
}

} // namespace mobiflow::cli
