#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mobiflow/flow_table.hpp"
#include "mobiflow/timeseries.hpp"

namespace mobiflow::ingest {

struct TrendsOptions {
    /// Value substituted for the censored "<1" token: midpoint of [0, 1).
    double censored_value = 0.5;
};

/// Wide CSV, one row per region: first column is the region name, remaining
/// column headers are dates one day apart. Values are unrestricted reals
/// (index units). Throws ParseError naming row/column for an unparseable
/// date header, a non-numeric cell or a duplicate region, and
/// ValidationError when the header dates are not consecutive days.
std::vector<TimeSeries> parse_daily_mobility(std::string_view csv_text);

/// Same wide shape with weekly columns. Cells are values in [0, 100] or the
/// censored token "<1". Out-of-range values raise ValidationError naming
/// row/column.
std::vector<TimeSeries> parse_weekly_trends(std::string_view csv_text,
                                            const TrendsOptions& options = {});

/// Long CSV with columns week_start, origin, destination, visitor_flow,
/// population_flow, origin_lat, origin_lng, dest_lat, dest_lng (located by
/// name). Validates flows, coordinate ranges, centroid consistency and the
/// 7-day week grid.
WeeklyFlowTable parse_flow_records(std::string_view csv_text);

/// Maps value v to (v - min) / (max - min); dates unchanged. The minimum
/// maps to exactly 0 and the maximum to exactly 1. Throws ValidationError
/// for fewer than 2 points or a constant series.
TimeSeries minmax_scale(const TimeSeries& series);

/// Each weekly value is anchored at its week_start date; days between
/// consecutive anchors vary linearly. Anchors are reproduced exactly and the
/// output covers first through last anchor inclusive.
TimeSeries interpolate_weekly_to_daily(const TimeSeries& series);

/// Re-emits the wide format (dates as YYYY-MM-DD). All series must share
/// cadence and date grid.
std::string write_wide_csv(const std::vector<TimeSeries>& series);

/// Re-emits the long flow format with the canonical column order.
std::string write_flow_csv(const WeeklyFlowTable& table);

/// JSON echo of parsed structures, for debugging.
std::string timeseries_to_json(const std::vector<TimeSeries>& series);
std::string flow_table_to_json(const WeeklyFlowTable& table);

} // namespace mobiflow::ingest
