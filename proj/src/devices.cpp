#include "rfsim/devices.hpp"

namespace rfsim {

Vec3 station_enu(const StationConfig& s, const geo::GeoPoint& origin) {
    const geo::EnuPoint e = geo::to_enu(s.position, origin);
    return {e.x, e.y, s.altitude_m};
}

Vec3 ue_enu(const UeConfig& u, const geo::GeoPoint& origin) {
    const geo::EnuPoint e = geo::to_enu(u.position, origin);
    return {e.x, e.y, u.position.alt()};
}

}  // namespace rfsim
