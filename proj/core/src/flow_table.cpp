#include "mobiflow/flow_table.hpp"

#include <algorithm>
#include <set>

#include "mobiflow/errors.hpp"

namespace mobiflow {

void validate(const GeoPoint& point) {
    if (!(point.lat >= -90.0 && point.lat <= 90.0)) {
        throw ValidationError("latitude " + std::to_string(point.lat) + " out of [-90, 90]");
    }
    if (!(point.lon >= -180.0 && point.lon <= 180.0)) {
        throw ValidationError("longitude " + std::to_string(point.lon) + " out of [-180, 180]");
    }
}

std::vector<Date> WeeklyFlowTable::weeks() const {
    std::set<Date> distinct;
    for (const FlowRecord& r : records) distinct.insert(r.week_start);
    return {distinct.begin(), distinct.end()};
}

void validate(const WeeklyFlowTable& table) {
    for (const FlowRecord& r : table.records) {
        if (r.visitor_flow < 0.0 || r.population_flow < 0.0) {
            throw ValidationError("negative flow on record " + r.origin + "->" + r.destination +
                                  " week " + r.week_start.to_iso());
        }
        if (!table.centroids.count(r.origin)) {
            throw ValidationError("region '" + r.origin + "' has no centroid");
        }
        if (!table.centroids.count(r.destination)) {
            throw ValidationError("region '" + r.destination + "' has no centroid");
        }
    }
    for (const auto& [region, point] : table.centroids) {
        try {
            validate(point);
        } catch (const ValidationError& e) {
            throw ValidationError("centroid of '" + region + "': " + e.what());
        }
    }
    const std::vector<Date> ws = table.weeks();
    for (std::size_t i = 1; i < ws.size(); ++i) {
        if (ws[i] - ws[i - 1] != 7) {
            throw ValidationError("week starts " + ws[i - 1].to_iso() + " and " + ws[i].to_iso() +
                                  " are not 7 days apart");
        }
    }
}

WeeklyFlowTable merge(const WeeklyFlowTable& a, const WeeklyFlowTable& b) {
    WeeklyFlowTable out = a;
    out.records.insert(out.records.end(), b.records.begin(), b.records.end());
    for (const auto& [region, point] : b.centroids) {
        const auto it = out.centroids.find(region);
        if (it != out.centroids.end() && !(it->second == point)) {
            throw ValidationError("conflicting centroid for region '" + region + "' while merging");
        }
        out.centroids.emplace(region, point);
    }
    validate(out);
    return out;
}

const char* to_string(FlowKind kind) {
    return kind == FlowKind::visitor ? "visitor" : "population";
}

} // namespace mobiflow
