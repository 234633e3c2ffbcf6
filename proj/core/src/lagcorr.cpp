#include "mobiflow/lagcorr.hpp"

#include <cmath>
#include <optional>

#include "mobiflow/errors.hpp"

namespace mobiflow::lagcorr {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw ValidationError("correlation length mismatch: " + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()));
    }
    const std::size_t n = x.size();
    if (n < 3) {
        throw ValidationError("correlation needs at least 3 samples, got " + std::to_string(n));
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedCorrelationError("correlation undefined: zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Value of a contiguous daily series at a date, if covered.
std::optional<double> value_at(const TimeSeries& s, Date d) {
    if (s.points.empty()) return std::nullopt;
    const int off = d - s.points.front().date;
    if (off < 0 || static_cast<std::size_t>(off) >= s.points.size()) return std::nullopt;
    return s.points[static_cast<std::size_t>(off)].value;
}

} // namespace

LagResult best_lag(const TimeSeries& mobility, const TimeSeries& awareness,
                   const LagOptions& options) {
    if (mobility.cadence != Cadence::daily || awareness.cadence != Cadence::daily) {
        throw ValidationError("lag scan expects daily series");
    }
    if (options.max_shift < 0) {
        throw ValidationError("max_shift must be non-negative, got " +
                              std::to_string(options.max_shift));
    }
    validate(mobility);
    validate(awareness);

    LagResult result;
    result.region_id = mobility.region_id;
    result.profile.reserve(static_cast<std::size_t>(options.max_shift) + 1);
    for (int d = 0; d <= options.max_shift; ++d) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto& p : mobility.points) {
            if (const auto a = value_at(awareness, p.date - d)) {
                xs.push_back(p.value);
                ys.push_back(*a);
            }
        }
        if (xs.size() < 3) {
            throw ValidationError("insufficient overlap at shift " + std::to_string(d) +
                                  " for region '" + mobility.region_id + "': " +
                                  std::to_string(xs.size()) + " samples");
        }
        double r = 0.0;
        try {
            r = pearson(xs, ys);
        } catch (const UndefinedCorrelationError&) {
            throw UndefinedCorrelationError("zero-variance window at shift " +
                                            std::to_string(d) + " for region '" +
                                            mobility.region_id + "'");
        }
        if (result.profile.empty() || std::abs(r) > std::abs(result.r_at_best)) {
            result.best_shift = d;
            result.r_at_best = r;
            result.overlap_length = xs.size();
        }
        result.profile.push_back({d, r, xs.size()});
    }
    return result;
}

int peak_offset(const TimeSeries& x, const TimeSeries& y) {
    if (x.cadence != Cadence::weekly || y.cadence != Cadence::weekly) {
        throw ValidationError("peak offset expects weekly series");
    }
    if (x.points.empty() || y.points.empty()) {
        throw ValidationError("peak offset expects non-empty series");
    }
    if (x.points.size() != y.points.size() ||
        x.points.front().date != y.points.front().date) {
        throw ValidationError("peak offset expects series on the same week grid");
    }
    auto peak_date = [](const TimeSeries& s) {
        Date best = s.points.front().date;
        double hi = s.points.front().value;
        for (const auto& p : s.points) {
            if (p.value > hi) {
                hi = p.value;
                best = p.date;
            }
        }
        return best;
    };
    return (peak_date(x) - peak_date(y)) / 7;
}

} // namespace mobiflow::lagcorr
