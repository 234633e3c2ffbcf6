#include "mobiflow/timeseries.hpp"

#include "mobiflow/errors.hpp"

namespace mobiflow {

void validate(const TimeSeries& series) {
    const int step = cadence_days(series.cadence);
    for (std::size_t i = 1; i < series.points.size(); ++i) {
        const int gap = series.points[i].date - series.points[i - 1].date;
        if (gap != step) {
            throw ValidationError("series '" + series.region_id + "': gap of " +
                                  std::to_string(gap) + " day(s) between " +
                                  series.points[i - 1].date.to_iso() + " and " +
                                  series.points[i].date.to_iso() + ", expected " +
                                  std::to_string(step));
        }
    }
}

} // namespace mobiflow
