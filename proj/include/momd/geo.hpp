#pragma once

#include <cmath>

namespace momd {

// Mean Earth radius in metres, used by all spherical distance math.
inline constexpr double kEarthRadius = 6371000.0;

struct GeoPoint {
    double lat; // degrees
    double lon; // degrees
};

struct PlanarPoint {
    double x; // metres
    double y; // metres
};

inline double deg2rad(double deg) {
    return deg * (M_PI / 180.0);
}

// Great-circle distance in metres on a sphere of radius kEarthRadius.
inline double haversine(const GeoPoint& a, const GeoPoint& b) {
    double phi1 = deg2rad(a.lat);
    double phi2 = deg2rad(b.lat);
    double dphi = deg2rad(b.lat - a.lat);
    double dlam = deg2rad(b.lon - a.lon);
    double s1 = std::sin(dphi / 2.0);
    double s2 = std::sin(dlam / 2.0);
    double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    if (h > 1.0) h = 1.0;
    return 2.0 * kEarthRadius * std::asin(std::sqrt(h));
}

inline double euclidean(const PlanarPoint& a, const PlanarPoint& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

} // namespace momd
