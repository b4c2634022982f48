#ifndef RFSIM_GEODESY_HPP
#define RFSIM_GEODESY_HPP

#include "rfsim/vec3.hpp"

namespace rfsim::geo {

// Spherical earth model. All local-frame math and the great-circle distance
// use the same radius so that planar and geodesic distances stay consistent
// over the desk-scale regions this tool targets.
inline constexpr double kEarthRadiusM = 6371000.0;

/// Geographic coordinate, WGS84 degrees. alt is meters above local ground.
class GeoPoint {
public:
    GeoPoint() = default;
    GeoPoint(double lat_deg, double lon_deg, double alt_m = 0.0);

    double lat() const { return lat_; }
    double lon() const { return lon_; }
    double alt() const { return alt_; }

    bool operator==(const GeoPoint& o) const {
        return lat_ == o.lat_ && lon_ == o.lon_ && alt_ == o.alt_;
    }

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
    double alt_ = 0.0;
};

/// Point in the local East-North-Up frame anchored at a scene origin.
struct EnuPoint {
    double x = 0.0;  // meters east
    double y = 0.0;  // meters north
    double z = 0.0;  // meters up

    Vec3 vec() const { return {x, y, z}; }
    static EnuPoint from_vec(const Vec3& v) { return {v.x, v.y, v.z}; }
};

/// Geographic -> local tangent-plane frame. Valid for |p - origin| < 50 km.
EnuPoint to_enu(const GeoPoint& p, const GeoPoint& origin);

/// Inverse of to_enu. Valid for |p| < 50 km.
GeoPoint to_geo(const EnuPoint& p, const GeoPoint& origin);

/// Great-circle distance in meters, ignoring altitude. Exactly symmetric.
double ground_distance(const GeoPoint& a, const GeoPoint& b);

}  // namespace rfsim::geo

#endif  // RFSIM_GEODESY_HPP
