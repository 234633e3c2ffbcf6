#include "mobiflow/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "mobiflow/errors.hpp"

namespace mobiflow::geo {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

const GeoPoint& centroid_of(const std::map<std::string, GeoPoint>& centroids,
                            const std::string& region) {
    const auto it = centroids.find(region);
    if (it == centroids.end()) throw LookupError("no centroid for region '" + region + "'");
    return it->second;
}

// Index of the member whose mean distance to the others is smallest; members
// are sorted, so the first minimum is the lexicographically smallest tie.
std::size_t medoid_index(const std::vector<GeoPoint>& pts) {
    std::vector<double> sums(pts.size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = haversine_km(pts[i], pts[j]);
            sums[i] += d;
            sums[j] += d;
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        if (sums[i] < sums[best]) best = i;
    }
    return best;
}

} // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    validate(a);
    validate(b);
    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlambda = (b.lon - a.lon) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

GeoPoint destination_point(const GeoPoint& origin, double bearing_deg, double distance_km) {
    validate(origin);
    if (distance_km < 0.0) throw ValidationError("distance must be non-negative");
    const double delta = distance_km / kEarthRadiusKm;
    const double theta = bearing_deg * kDegToRad;
    const double phi1 = origin.lat * kDegToRad;
    const double lambda1 = origin.lon * kDegToRad;
    const double sin_phi2 =
        std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta);
    const double phi2 = std::asin(std::clamp(sin_phi2, -1.0, 1.0));
    const double lambda2 =
        lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                             std::cos(delta) - std::sin(phi1) * sin_phi2);
    double lon = lambda2 / kDegToRad;
    while (lon > 180.0) lon -= 360.0;
    while (lon < -180.0) lon += 360.0;
    return {phi2 / kDegToRad, lon};
}

ClusterDistanceReport cluster_distance_report(const cluster::Partition& partition,
                                              const std::vector<std::string>& nodes,
                                              const std::map<std::string, GeoPoint>& centroids,
                                              Date week_start) {
    if (partition.labels.size() != nodes.size()) {
        throw ValidationError("partition covers " + std::to_string(partition.labels.size()) +
                              " nodes, got " + std::to_string(nodes.size()) + " region ids");
    }
    if (centroids.size() < 2) {
        throw ValidationError("country average needs at least 2 regions with centroids, got " +
                              std::to_string(centroids.size()));
    }
    ClusterDistanceReport report;
    report.week_start = week_start;

    const auto groups = partition.groups();
    for (std::size_t c = 0; c < groups.size(); ++c) {
        ClusterDistanceEntry entry;
        entry.cluster = c;
        for (const std::size_t node : groups[c]) entry.members.push_back(nodes[node]);
        std::sort(entry.members.begin(), entry.members.end());

        std::vector<GeoPoint> pts;
        pts.reserve(entry.members.size());
        for (const auto& region : entry.members) pts.push_back(centroid_of(centroids, region));

        const std::size_t best = medoid_index(pts);
        entry.medoid = entry.members[best];

        if (entry.members.size() > 1) {
            double sum = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i != best) sum += haversine_km(pts[best], pts[i]);
            }
            entry.cluster_avg_km = sum / static_cast<double>(pts.size() - 1);
        } else {
            report.flags.push_back("cluster " + std::to_string(c) + " ('" + entry.medoid +
                                   "') is a singleton: cluster average undefined");
        }

        double country_sum = 0.0;
        std::size_t country_n = 0;
        for (const auto& [region, point] : centroids) {
            if (region == entry.medoid) continue;
            country_sum += haversine_km(pts[best], point);
            ++country_n;
        }
        entry.country_avg_km = country_sum / static_cast<double>(country_n);

        if (entry.cluster_avg_km) {
            if (entry.country_avg_km > 0.0) {
                entry.reduction_pct = (entry.country_avg_km - *entry.cluster_avg_km) /
                                      entry.country_avg_km * 100.0;
            } else {
                report.flags.push_back("cluster " + std::to_string(c) +
                                       ": country average is 0, reduction undefined");
            }
        }
        report.per_cluster.push_back(std::move(entry));
    }
    return report;
}

std::string clusters_to_geojson(const cluster::Partition& partition,
                                const std::vector<std::string>& nodes,
                                const std::map<std::string, GeoPoint>& centroids) {
    if (partition.labels.size() != nodes.size()) {
        throw ValidationError("partition covers " + std::to_string(partition.labels.size()) +
                              " nodes, got " + std::to_string(nodes.size()) + " region ids");
    }
    std::map<std::string, std::size_t> cluster_of;
    for (std::size_t i = 0; i < nodes.size(); ++i) cluster_of[nodes[i]] = partition.labels[i];
    std::map<std::string, bool> medoid_of;
    for (const auto& group : partition.groups()) {
        std::vector<std::string> members;
        for (const std::size_t node : group) members.push_back(nodes[node]);
        std::sort(members.begin(), members.end());
        std::vector<GeoPoint> pts;
        pts.reserve(members.size());
        for (const auto& region : members) pts.push_back(centroid_of(centroids, region));
        const std::string medoid = members[medoid_index(pts)];
        for (const auto& region : members) medoid_of[region] = region == medoid;
    }
    nlohmann::ordered_json root;
    root["type"] = "FeatureCollection";
    auto& features = root["features"] = nlohmann::ordered_json::array();
    for (const auto& region : nodes) {
        const GeoPoint& p = centroid_of(centroids, region);
        features.push_back({{"type", "Feature"},
                            {"geometry",
                             {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}}},
                            {"properties",
                             {{"region", region},
                              {"cluster", cluster_of.at(region)},
                              {"medoid", medoid_of.at(region)}}}});
    }
    return root.dump(2);
}

} // namespace mobiflow::geo
