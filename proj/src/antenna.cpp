#include "rfsim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rfsim::antenna {

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;

struct Mat3 {
    double m[3][3];

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 transposed() const {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.m[i][j] = m[j][i];
        return t;
    }
};

Mat3 mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            r.m[i][j] = 0.0;
            for (int k = 0; k < 3; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
        }
    return r;
}

// Yaw about world z, compass sense. Maps the local boresight (+y) to
// (sin az, cos az, 0): az=0 faces north with the identity rotation, az=90
// faces east.
Mat3 yaw_matrix(double az_rad) {
    const double s = std::sin(az_rad);
    const double c = std::cos(az_rad);
    return {{{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

// Pitch about local x. Positive tilt raises the boresight (+y gains +z).
Mat3 pitch_matrix(double tilt_rad) {
    const double s = std::sin(tilt_rad);
    const double c = std::cos(tilt_rad);
    return {{{1.0, 0.0, 0.0}, {0.0, c, -s}, {0.0, s, c}}};
}

// Roll about local y (the boresight).
Mat3 roll_matrix(double roll_rad) {
    const double s = std::sin(roll_rad);
    const double c = std::cos(roll_rad);
    return {{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}};
}

Mat3 local_to_world_matrix(const Orientation& o) {
    return mul(mul(yaw_matrix(o.azimuth_deg * kDeg2Rad), pitch_matrix(o.tilt_deg * kDeg2Rad)),
               roll_matrix(o.roll_deg * kDeg2Rad));
}

double to_dbi(double linear_gain) {
    if (!(linear_gain > 0.0)) return kGainFloorDbi;
    return std::max(kGainFloorDbi, 10.0 * std::log10(linear_gain));
}

}  // namespace

Vec3 world_to_local(const Orientation& o, const Vec3& world_dir) {
    return local_to_world_matrix(o).transposed() * world_dir;
}

Vec3 local_to_world(const Orientation& o, const Vec3& local_dir) {
    return local_to_world_matrix(o) * local_dir;
}

double pattern_gain_dbi(Pattern p, double theta_rad, double phi_rad) {
    switch (p) {
        case Pattern::kIso:
            return 0.0;
        case Pattern::kDipole: {
            const double s = std::sin(theta_rad);
            return to_dbi(1.5 * s * s);
        }
        case Pattern::kHwDipole: {
            const double s = std::sin(theta_rad);
            if (std::fabs(s) < 1e-12) return kGainFloorDbi;
            const double f = std::cos(M_PI_2 * std::cos(theta_rad)) / s;
            return to_dbi(1.643 * f * f);
        }
        case Pattern::kTr38901: {
            // Single element of TR 38.901 section 7.3 with theta3dB = phi3dB
            // = 65 deg, SLA_v = A_max = 30 dB, G_max = 8 dBi.
            constexpr double kBeamwidthDeg = 65.0;
            constexpr double kSlaDb = 30.0;
            constexpr double kAMaxDb = 30.0;
            constexpr double kGMaxDbi = 8.0;
            const double theta_deg = theta_rad / kDeg2Rad;
            double phi_deg = std::remainder(phi_rad / kDeg2Rad, 360.0);
            const double att_v =
                std::min(12.0 * std::pow((theta_deg - 90.0) / kBeamwidthDeg, 2.0), kSlaDb);
            const double att_h = std::min(12.0 * std::pow(phi_deg / kBeamwidthDeg, 2.0), kAMaxDb);
            return kGMaxDbi - std::min(att_v + att_h, kAMaxDb);
        }
    }
    return kGainFloorDbi;
}

double gain_dbi(const AntennaConfig& cfg, const Vec3& world_dir) {
    if (cfg.pattern == Pattern::kIso) return 0.0;
    const Vec3 local = world_to_local(cfg.orientation, world_dir);
    const double theta = std::acos(std::clamp(local.z, -1.0, 1.0));
    // Azimuthal angle from the boresight (+y) axis.
    const double phi = std::atan2(local.x, local.y);
    return pattern_gain_dbi(cfg.pattern, theta, phi);
}

Pattern pattern_from_name(const std::string& name) {
    if (name == "iso") return Pattern::kIso;
    if (name == "dipole") return Pattern::kDipole;
    if (name == "hw_dipole") return Pattern::kHwDipole;
    if (name == "tr38901") return Pattern::kTr38901;
    throw std::invalid_argument("unknown antenna pattern: '" + name +
                                "' (expected iso, dipole, hw_dipole, tr38901)");
}

std::string pattern_name(Pattern p) {
    switch (p) {
        case Pattern::kIso: return "iso";
        case Pattern::kDipole: return "dipole";
        case Pattern::kHwDipole: return "hw_dipole";
        case Pattern::kTr38901: return "tr38901";
    }
    return "iso";
}

}  // namespace rfsim::antenna
