#pragma once

#include <string>
#include <vector>

#include "mobiflow/date.hpp"

namespace mobiflow {

enum class Cadence { daily, weekly };

constexpr int cadence_days(Cadence c) { return c == Cadence::daily ? 1 : 7; }

struct TimePoint {
    Date date;
    double value = 0.0;
};

/// One region's date-indexed observations. Dates are strictly increasing
/// with a uniform gap of 1 day (daily) or 7 days (weekly); a gap is an
/// error, never an implicit missing value.
struct TimeSeries {
    std::string region_id;
    Cadence cadence = Cadence::daily;
    std::vector<TimePoint> points;
};

/// Throws ValidationError when the cadence invariant is violated.
void validate(const TimeSeries& series);

} // namespace mobiflow
