#pragma once

#include <string>
#include <vector>

#include "mobiflow/timeseries.hpp"

namespace mobiflow::lagcorr {

/// Sample Pearson correlation of two equal-length vectors. Throws
/// ValidationError on length mismatch or fewer than 3 samples and
/// UndefinedCorrelationError when either side has zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct LagOptions {
    int max_shift = 30; ///< shifts scanned are 0..max_shift inclusive
};

struct ShiftSample {
    int shift = 0;
    double r = 0.0;
    std::size_t overlap = 0;
};

struct LagResult {
    std::string region_id;
    int best_shift = 0;   ///< argmax of |r|, ties toward the smallest shift
    double r_at_best = 0.0;
    std::size_t overlap_length = 0; ///< sample count at the best shift
    std::vector<ShiftSample> profile; ///< one entry per scanned shift
};

/// Scans shifts d in [0, max_shift], correlating mobility(t) against
/// awareness(t - d) over the dates where both exist; a positive best shift
/// means mobility lags awareness. Both series must be daily. Throws
/// ValidationError when any shift's overlap has fewer than 3 samples and
/// UndefinedCorrelationError (naming the shift) on a zero-variance window.
LagResult best_lag(const TimeSeries& mobility, const TimeSeries& awareness,
                   const LagOptions& options = {});

/// Difference, in whole weeks, between the dates at which two weekly series
/// on the same week grid attain their maxima (earliest week on ties):
/// positive when x peaks after y. Throws ValidationError unless both are
/// weekly, non-empty and share their date grid.
int peak_offset(const TimeSeries& x, const TimeSeries& y);

} // namespace mobiflow::lagcorr
