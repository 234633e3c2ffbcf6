#pragma once

namespace mobiflow {

/// WGS-style coordinates in degrees; lat in [-90, 90], lon in [-180, 180].
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Throws ValidationError when either coordinate is out of range.
void validate(const GeoPoint& point);

} // namespace mobiflow
