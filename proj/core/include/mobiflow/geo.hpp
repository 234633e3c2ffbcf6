#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobiflow/cluster.hpp"
#include "mobiflow/date.hpp"
#include "mobiflow/geopoint.hpp"

namespace mobiflow::geo {

/// Mean Earth radius in kilometers.
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance between two points on the spherical Earth.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

/// Point reached by travelling distance_km from origin along the initial
/// bearing (degrees clockwise from north). Longitude is normalized to
/// [-180, 180].
GeoPoint destination_point(const GeoPoint& origin, double bearing_deg, double distance_km);

struct ClusterDistanceEntry {
    std::size_t cluster = 0;
    std::vector<std::string> members; ///< region ids, ascending
    std::string medoid;               ///< member with the smallest mean distance to the rest
    /// Mean distance from the medoid to the other members; empty for
    /// singletons.
    std::optional<double> cluster_avg_km;
    /// Mean distance from the medoid to every other region with a centroid,
    /// cluster membership ignored.
    double country_avg_km = 0.0;
    /// (country_avg - cluster_avg) / country_avg * 100; empty for singletons
    /// and when the country average is 0.
    std::optional<double> reduction_pct;
};

struct ClusterDistanceReport {
    Date week_start;
    std::vector<ClusterDistanceEntry> per_cluster;
    /// Notes for singleton clusters and degenerate geometry; empty when every
    /// cluster has a defined reduction.
    std::vector<std::string> flags;
};

/// How much tighter each cluster sits than the country as a whole: compares
/// the medoid's mean distance within its cluster against its mean distance to
/// every region in `centroids`. Medoid ties go to the lexicographically
/// smallest region id. Throws LookupError for members without a centroid and
/// ValidationError when fewer than 2 regions have centroids.
ClusterDistanceReport cluster_distance_report(const cluster::Partition& partition,
                                              const std::vector<std::string>& nodes,
                                              const std::map<std::string, GeoPoint>& centroids,
                                              Date week_start);

/// One Point feature per node with its cluster id; medoids are flagged.
std::string clusters_to_geojson(const cluster::Partition& partition,
                                const std::vector<std::string>& nodes,
                                const std::map<std::string, GeoPoint>& centroids);

} // namespace mobiflow::geo
