#ifndef RFSIM_DEVICES_HPP
#define RFSIM_DEVICES_HPP

#include <string>
#include <vector>

#include "rfsim/antenna.hpp"
#include "rfsim/geodesy.hpp"

namespace rfsim {

/// Base station. Altitude is kept separate from the map position because it
/// is swept independently of it.
struct StationConfig {
    std::string id;
    geo::GeoPoint position;
    double altitude_m = 11.0;
    antenna::AntennaConfig antenna;
    double tx_power_dbm = 43.0;
};

struct UeConfig {
    std::string id;
    geo::GeoPoint position;  // alt defaults to 1.5 m above ground
    antenna::AntennaConfig antenna;
};

inline constexpr double kDefaultUeAltitudeM = 1.5;

/// ENU location of a device, using the altitude convention above.
Vec3 station_enu(const StationConfig& s, const geo::GeoPoint& origin);
Vec3 ue_enu(const UeConfig& u, const geo::GeoPoint& origin);

}  // namespace rfsim

#endif  // RFSIM_DEVICES_HPP
