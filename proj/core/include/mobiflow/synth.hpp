#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobiflow/cluster.hpp"
#include "mobiflow/flow_table.hpp"
#include "mobiflow/geopoint.hpp"
#include "mobiflow/timeseries.hpp"

namespace mobiflow::synth {

/// Zero-padded region id ("r00", "r01", ...) wide enough for `total`
/// regions, so lexicographic and numeric order agree.
std::string region_name(std::size_t index, std::size_t total);

/// Daily awareness/mobility pair with a planted delay: mobility falls when
/// awareness rose `lag` days earlier, so a lag scan should recover `lag`
/// with a strongly negative correlation.
struct LaggedPairSpec {
    std::string region = "region0";
    Date start = Date::from_ymd(2020, 1, 13);
    int length = 120;         ///< days of awareness signal; must exceed lag + 3
    int lag = 14;             ///< planted delay in days
    double noise_sigma = 0.5; ///< gaussian noise added to mobility
};

struct LaggedPair {
    TimeSeries awareness; ///< min-max scaled random walk over [start, start + length)
    TimeSeries mobility;  ///< -awareness(t - lag) + noise over [start + lag, start + length)
    int lag = 0;          ///< the planted delay, echoed
};

/// Awareness is a cumulative sum of unit-variance gaussian steps, min-max
/// scaled to [0, 1]. Substreams: the walk uses derive_seed(seed, 0), the
/// mobility noise derive_seed(seed, 1), so changing noise_sigma keeps the
/// awareness signal identical.
LaggedPair gen_lagged_pair(const LaggedPairSpec& spec, std::uint64_t seed);

/// One week of flows over blocks of regions: dense strong flows inside each
/// block, weak flows across blocks, so the block structure is the planted
/// clustering. Region centroids scatter around per-block geographic centers.
struct PlantedFlowSpec {
    Date week_start = Date::from_ymd(2020, 3, 1);
    std::vector<std::size_t> block_sizes; ///< each >= 1
    double intra_flow = 1000.0;           ///< base flow inside a block; > inter_flow
    double inter_flow = 10.0;             ///< base flow across blocks; > 0
    std::vector<GeoPoint> geo_centers;    ///< one per block; empty -> spaced defaults
    double geo_spread_km = 50.0;          ///< member scatter around the block center
};

struct PlantedFlow {
    WeeklyFlowTable table;
    cluster::Partition truth; ///< block of each region, in sorted region order
    std::vector<std::string> regions;
};

/// Complete directed table over all ordered region pairs (no self-loops);
/// every flow is its base value jittered by +-10% so exact ties cannot
/// occur. Region names sort in generation order, so `truth` is aligned with
/// the node order of the week's network.
PlantedFlow gen_planted_flow_network(const PlantedFlowSpec& spec, std::uint64_t seed);

struct TwoWeekPair {
    WeeklyFlowTable table; ///< both weeks in one table, same regions and centroids
    cluster::Partition truth;
    Date week1;
    Date week2;
};

/// Week 2 repeats week 1 with all cross-block flows scaled by
/// isolation_factor in (0, 1], mimicking a travel clampdown between the two
/// weeks; factor 1 makes the weeks identical.
TwoWeekPair gen_two_week_pair(const PlantedFlowSpec& spec, double isolation_factor,
                              std::uint64_t seed);

/// Multi-week table over a fixed region set whose planted cluster count
/// varies week by week.
struct PanelSpec {
    Date first_week = Date::from_ymd(2020, 1, 13);
    std::size_t regions = 30;
    std::vector<std::size_t> weekly_cluster_counts; ///< one entry per week, each in [1, regions]
    double intra_flow = 1000.0;
    double inter_flow = 10.0;
};

struct Panel {
    WeeklyFlowTable table;
    std::vector<cluster::Partition> truths; ///< planted partition per week
};

/// Region centroids are fixed across weeks (drawn from derive_seed(seed, 0));
/// week w's flows use derive_seed(seed, w + 1). Week w splits the regions
/// into weekly_cluster_counts[w] contiguous, near-equal blocks.
Panel gen_panel(const PanelSpec& spec, std::uint64_t seed);

} // namespace mobiflow::synth
