#include "mobiflow/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "mobiflow/errors.hpp"
#include "mobiflow/geo.hpp"
#include "mobiflow/ingest.hpp"
#include "mobiflow/rng.hpp"

namespace mobiflow::synth {
namespace {

double jitter(rng::Engine& engine, double base) {
    return base * (0.9 + 0.2 * engine.uniform01());
}

GeoPoint default_block_center(std::size_t block) {
    return {15.0 + 2.5 * static_cast<double>(block),
            -130.0 + 9.0 * static_cast<double>(block)};
}

void append_week_flows(WeeklyFlowTable& table, Date week_start,
                       const std::vector<std::string>& regions,
                       const std::vector<std::size_t>& block_of, rng::Engine& engine,
                       double intra_flow, double inter_flow) {
    const std::size_t n = regions.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            FlowRecord rec;
            rec.week_start = week_start;
            rec.origin = regions[i];
            rec.destination = regions[j];
            rec.visitor_flow =
                jitter(engine, block_of[i] == block_of[j] ? intra_flow : inter_flow);
            rec.population_flow = rec.visitor_flow * (15.0 + 10.0 * engine.uniform01());
            table.records.push_back(std::move(rec));
        }
    }
}

std::vector<std::size_t> contiguous_blocks(std::size_t n, std::size_t k) {
    std::vector<std::size_t> block_of(n);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t next = 0;
    for (std::size_t b = 0; b < k; ++b) {
        const std::size_t size = base + (b < extra ? 1 : 0);
        for (std::size_t s = 0; s < size; ++s) block_of[next++] = b;
    }
    return block_of;
}

} // namespace

std::string region_name(std::size_t index, std::size_t total) {
    std::size_t width = 1;
    for (std::size_t v = total > 0 ? total - 1 : 0; v >= 10; v /= 10) ++width;
    width = std::max<std::size_t>(width, 2);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "r%0*zu", static_cast<int>(width), index);
    return buf;
}

LaggedPair gen_lagged_pair(const LaggedPairSpec& spec, std::uint64_t seed) {
    if (spec.lag < 0) throw ValidationError("lag must be non-negative");
    if (spec.length <= spec.lag + 3) {
        throw ValidationError("length " + std::to_string(spec.length) +
                              " must exceed lag + 3 = " + std::to_string(spec.lag + 3));
    }
    if (spec.noise_sigma < 0.0) throw ValidationError("noise_sigma must be non-negative");

    rng::Engine walk_engine(rng::derive_seed(seed, 0));
    rng::Engine noise_engine(rng::derive_seed(seed, 1));

    LaggedPair out;
    out.lag = spec.lag;
    out.awareness.region_id = spec.region;
    out.awareness.cadence = Cadence::daily;
    double level = 0.0;
    for (int d = 0; d < spec.length; ++d) {
        level += walk_engine.gaussian(0.0, 1.0);
        out.awareness.points.push_back({spec.start + d, level});
    }
    out.awareness = ingest::minmax_scale(out.awareness);

    out.mobility.region_id = spec.region;
    out.mobility.cadence = Cadence::daily;
    for (int d = spec.lag; d < spec.length; ++d) {
        const double base = out.awareness.points[static_cast<std::size_t>(d - spec.lag)].value;
        out.mobility.points.push_back(
            {spec.start + d, -base + noise_engine.gaussian(0.0, spec.noise_sigma)});
    }
    return out;
}

PlantedFlow gen_planted_flow_network(const PlantedFlowSpec& spec, std::uint64_t seed) {
    if (spec.block_sizes.empty()) throw ValidationError("block_sizes must not be empty");
    std::size_t n = 0;
    for (const std::size_t s : spec.block_sizes) {
        if (s == 0) throw ValidationError("block sizes must be positive");
        n += s;
    }
    if (!(spec.intra_flow > spec.inter_flow && spec.inter_flow > 0.0)) {
        throw ValidationError("flows must satisfy intra > inter > 0, got intra " +
                              std::to_string(spec.intra_flow) + ", inter " +
                              std::to_string(spec.inter_flow));
    }
    if (!spec.geo_centers.empty() && spec.geo_centers.size() != spec.block_sizes.size()) {
        throw ValidationError("need one geo center per block: " +
                              std::to_string(spec.geo_centers.size()) + " centers for " +
                              std::to_string(spec.block_sizes.size()) + " blocks");
    }
    if (spec.geo_spread_km <= 0.0) throw ValidationError("geo_spread_km must be positive");

    PlantedFlow out;
    std::vector<std::size_t> block_of;
    block_of.reserve(n);
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
        for (std::size_t s = 0; s < spec.block_sizes[b]; ++s) block_of.push_back(b);
    }
    for (std::size_t i = 0; i < n; ++i) out.regions.push_back(region_name(i, n));
    out.truth = cluster::Partition::from_labels(block_of);

    rng::Engine geo_engine(rng::derive_seed(seed, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const GeoPoint center = spec.geo_centers.empty()
                                    ? default_block_center(block_of[i])
                                    : spec.geo_centers[block_of[i]];
        const double bearing = 360.0 * geo_engine.uniform01();
        const double dist = spec.geo_spread_km * geo_engine.uniform01();
        out.table.centroids[out.regions[i]] = geo::destination_point(center, bearing, dist);
    }

    rng::Engine flow_engine(rng::derive_seed(seed, 1));
    append_week_flows(out.table, spec.week_start, out.regions, block_of, flow_engine,
                      spec.intra_flow, spec.inter_flow);
    validate(out.table);
    return out;
}

TwoWeekPair gen_two_week_pair(const PlantedFlowSpec& spec, double isolation_factor,
                              std::uint64_t seed) {
    if (!(isolation_factor > 0.0 && isolation_factor <= 1.0)) {
        throw ValidationError("isolation_factor must be in (0, 1], got " +
                              std::to_string(isolation_factor));
    }
    PlantedFlow week1 = gen_planted_flow_network(spec, seed);

    TwoWeekPair out;
    out.truth = week1.truth;
    out.week1 = spec.week_start;
    out.week2 = spec.week_start + 7;

    std::map<std::string, std::size_t> block_of;
    for (std::size_t i = 0; i < week1.regions.size(); ++i) {
        block_of[week1.regions[i]] = week1.truth.labels[i];
    }
    out.table = week1.table;
    for (const FlowRecord& rec : week1.table.records) {
        FlowRecord scaled = rec;
        scaled.week_start = out.week2;
        if (block_of.at(rec.origin) != block_of.at(rec.destination)) {
            scaled.visitor_flow *= isolation_factor;
            scaled.population_flow *= isolation_factor;
        }
        out.table.records.push_back(std::move(scaled));
    }
    validate(out.table);
    return out;
}

Panel gen_panel(const PanelSpec& spec, std::uint64_t seed) {
    if (spec.regions == 0) throw ValidationError("a panel needs at least 1 region");
    if (spec.weekly_cluster_counts.empty()) {
        throw ValidationError("a panel needs at least 1 week");
    }
    for (const std::size_t k : spec.weekly_cluster_counts) {
        if (k == 0 || k > spec.regions) {
            throw ValidationError("weekly cluster counts must be in [1, regions]");
        }
    }
    if (!(spec.intra_flow > spec.inter_flow && spec.inter_flow > 0.0)) {
        throw ValidationError("flows must satisfy intra > inter > 0, got intra " +
                              std::to_string(spec.intra_flow) + ", inter " +
                              std::to_string(spec.inter_flow));
    }

    Panel out;
    const std::size_t n = spec.regions;
    std::vector<std::string> regions;
    regions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) regions.push_back(region_name(i, n));

    rng::Engine geo_engine(rng::derive_seed(seed, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n);
        const GeoPoint point{22.0 + 46.0 * frac + 0.5 * (geo_engine.uniform01() - 0.5),
                             -120.0 + 55.0 * frac + 0.5 * (geo_engine.uniform01() - 0.5)};
        out.table.centroids[regions[i]] = point;
    }

    for (std::size_t w = 0; w < spec.weekly_cluster_counts.size(); ++w) {
        const auto block_of = contiguous_blocks(n, spec.weekly_cluster_counts[w]);
        out.truths.push_back(cluster::Partition::from_labels(block_of));
        rng::Engine flow_engine(rng::derive_seed(seed, w + 1));
        append_week_flows(out.table, spec.first_week + 7 * static_cast<int>(w), regions,
                          block_of, flow_engine, spec.intra_flow, spec.inter_flow);
    }
    validate(out.table);
    return out;
}

} // namespace mobiflow::synth
