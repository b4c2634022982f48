#include "rfsim/geodesy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rfsim::geo {

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;
constexpr double kRad2Deg = 180.0 / M_PI;

Vec3 spherical_ecef(double lat_rad, double lon_rad, double radius) {
    const double cos_lat = std::cos(lat_rad);
    return {radius * cos_lat * std::cos(lon_rad),
            radius * cos_lat * std::sin(lon_rad),
            radius * std::sin(lat_rad)};
}

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg, double alt_m)
    : lat_(lat_deg), lon_(lon_deg), alt_(alt_m) {
    if (!(lat_deg >= -90.0 && lat_deg <= 90.0)) {
        throw std::invalid_argument("latitude out of range [-90, 90]: " + std::to_string(lat_deg));
    }
    if (!(lon_deg >= -180.0 && lon_deg <= 180.0)) {
        throw std::invalid_argument("longitude out of range [-180, 180]: " + std::to_string(lon_deg));
    }
}

EnuPoint to_enu(const GeoPoint& p, const GeoPoint& origin) {
    const double lat0 = origin.lat() * kDeg2Rad;
    const double lon0 = origin.lon() * kDeg2Rad;
    const Vec3 ecef = spherical_ecef(p.lat() * kDeg2Rad, p.lon() * kDeg2Rad,
                                     kEarthRadiusM + p.alt());
    const Vec3 ecef0 = spherical_ecef(lat0, lon0, kEarthRadiusM);
    const Vec3 d = ecef - ecef0;

    const double sin_lat0 = std::sin(lat0);
    const double cos_lat0 = std::cos(lat0);
    const double sin_lon0 = std::sin(lon0);
    const double cos_lon0 = std::cos(lon0);

    return {-sin_lon0 * d.x + cos_lon0 * d.y,
            -sin_lat0 * cos_lon0 * d.x - sin_lat0 * sin_lon0 * d.y + cos_lat0 * d.z,
            cos_lat0 * cos_lon0 * d.x + cos_lat0 * sin_lon0 * d.y + sin_lat0 * d.z};
}

GeoPoint to_geo(const EnuPoint& p, const GeoPoint& origin) {
    const double lat0 = origin.lat() * kDeg2Rad;
    const double lon0 = origin.lon() * kDeg2Rad;
    const double sin_lat0 = std::sin(lat0);
    const double cos_lat0 = std::cos(lat0);
    const double sin_lon0 = std::sin(lon0);
    const double cos_lon0 = std::cos(lon0);

    // Transpose of the ENU rotation, then back to spherical coordinates.
    const Vec3 d = {-sin_lon0 * p.x - sin_lat0 * cos_lon0 * p.y + cos_lat0 * cos_lon0 * p.z,
                    cos_lon0 * p.x - sin_lat0 * sin_lon0 * p.y + cos_lat0 * sin_lon0 * p.z,
                    cos_lat0 * p.y + sin_lat0 * p.z};
    const Vec3 ecef = spherical_ecef(lat0, lon0, kEarthRadiusM) + d;
    const double r = ecef.norm();
    const double lat = std::asin(ecef.z / r);
    const double lon = std::atan2(ecef.y, ecef.x);
    return {lat * kRad2Deg, lon * kRad2Deg, r - kEarthRadiusM};
}

double ground_distance(const GeoPoint& a, const GeoPoint& b) {
    // Haversine on absolute deltas so swapping the arguments is bit-identical.
    const double dlat = std::fabs(a.lat() - b.lat()) * kDeg2Rad;
    const double dlon = std::fabs(a.lon() - b.lon()) * kDeg2Rad;
    const double sin_dlat = std::sin(dlat / 2.0);
    const double sin_dlon = std::sin(dlon / 2.0);
    const double h = sin_dlat * sin_dlat +
                     std::cos(a.lat() * kDeg2Rad) * std::cos(b.lat() * kDeg2Rad) * sin_dlon * sin_dlon;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace rfsim::geo
