#pragma once

#include <map>
#include <string>
#include <vector>

#include "mobiflow/date.hpp"
#include "mobiflow/geopoint.hpp"

namespace mobiflow {

enum class FlowKind { visitor, population };

/// One directed origin->destination flow observation for one week.
/// origin == destination is a valid intra-region record.
struct FlowRecord {
    Date week_start;
    std::string origin;
    std::string destination;
    double visitor_flow = 0.0;
    double population_flow = 0.0;
};

/// Weekly origin-destination records plus one centroid per region.
struct WeeklyFlowTable {
    std::vector<FlowRecord> records;
    std::map<std::string, GeoPoint> centroids;

    /// Sorted distinct week_start dates.
    std::vector<Date> weeks() const;
};

/// Checks the table invariants: flows nonnegative, every region has a
/// centroid, valid coordinates, and distinct weeks exactly 7 days apart.
void validate(const WeeklyFlowTable& table);

/// Concatenates two tables; throws ValidationError on conflicting centroids
/// or if the merged weeks do not form a 7-day grid.
WeeklyFlowTable merge(const WeeklyFlowTable& a, const WeeklyFlowTable& b);

constexpr double flow_value(const FlowRecord& r, FlowKind kind) {
    return kind == FlowKind::visitor ? r.visitor_flow : r.population_flow;
}

const char* to_string(FlowKind kind);

} // namespace mobiflow
