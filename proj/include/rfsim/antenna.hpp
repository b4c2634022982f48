#ifndef RFSIM_ANTENNA_HPP
#define RFSIM_ANTENNA_HPP

#include <string>

#include "rfsim/vec3.hpp"

namespace rfsim::antenna {

/// Device orientation. Azimuth is compass style (0 = north, 90 = east),
/// tilt is elevation of the boresight (downtilt negative), roll spins the
/// device about the boresight. World->local applies yaw, then pitch, then
/// roll.
struct Orientation {
    double azimuth_deg = 0.0;  // [0, 360)
    double tilt_deg = 0.0;
    double roll_deg = 0.0;
};

enum class Pattern {
    kIso,
    kDipole,    // short dipole, axis = local z
    kHwDipole,  // half-wave dipole, axis = local z
    kTr38901,   // 3GPP TR 38.901 single element, boresight = local y
};

struct AntennaConfig {
    Pattern pattern = Pattern::kIso;
    Orientation orientation;
};

/// Gains below this are clamped so downstream dB arithmetic stays finite.
inline constexpr double kGainFloorDbi = -300.0;

Vec3 world_to_local(const Orientation& o, const Vec3& world_dir);
Vec3 local_to_world(const Orientation& o, const Vec3& local_dir);

/// Scalar power gain toward a world-frame direction pointing away from the
/// device. Finite everywhere; dipole axial nulls return kGainFloorDbi.
double gain_dbi(const AntennaConfig& cfg, const Vec3& world_dir);

/// Gain as a function of local polar angle theta (from local z) and azimuth
/// phi (from the boresight axis). Exposed for direct pattern checks.
double pattern_gain_dbi(Pattern p, double theta_rad, double phi_rad);

Pattern pattern_from_name(const std::string& name);
std::string pattern_name(Pattern p);

}  // namespace rfsim::antenna

#endif  // RFSIM_ANTENNA_HPP
