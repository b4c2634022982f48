#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rfsim/antenna.hpp"

using namespace rfsim;
using namespace rfsim::antenna;

namespace {

constexpr double kDeg = M_PI / 180.0;

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v{n(rng), n(rng), n(rng)};
    while (v.norm() < 1e-6) v = {n(rng), n(rng), n(rng)};
    return v.normalized();
}

// Midpoint-rule sphere integral of the linear power gain, normalized by
// 4*pi. Equals 1 for a lossless pattern.
double normalized_radiated_power(Pattern p) {
    const int n_theta = 2048, n_phi = 256;
    double sum = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = M_PI * (i + 0.5) / n_theta;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * (j + 0.5) / n_phi;
            const double g = std::pow(10.0, pattern_gain_dbi(p, theta, phi) / 10.0);
            sum += g * std::sin(theta);
        }
    }
    return sum * (M_PI / n_theta) * (2.0 * M_PI / n_phi) / (4.0 * M_PI);
}

}  // namespace

TEST_CASE("iso gain is exactly 0 dBi in every direction") {
    std::mt19937_64 rng(1);
    AntennaConfig cfg{Pattern::kIso, {123.0, -5.0, 7.0}};
    for (int i = 0; i < 100; ++i) {
        CHECK(gain_dbi(cfg, random_unit(rng)) == 0.0);
    }
}

TEST_CASE("half-wave dipole broadside directivity is 2.15 dBi") {
    CHECK(pattern_gain_dbi(Pattern::kHwDipole, 90.0 * kDeg, 0.3) ==
          doctest::Approx(10.0 * std::log10(1.643)).epsilon(1e-12));
    CHECK(std::fabs(pattern_gain_dbi(Pattern::kHwDipole, 90.0 * kDeg, 0.0) - 2.15) < 0.01);
    // Axial null hits the floor.
    CHECK(pattern_gain_dbi(Pattern::kHwDipole, 0.0, 0.0) == kGainFloorDbi);
    CHECK(pattern_gain_dbi(Pattern::kDipole, 0.0, 0.0) == kGainFloorDbi);
}

TEST_CASE("short dipole follows 1.5 sin^2 theta") {
    for (const double theta_deg : {10.0, 35.0, 60.0, 90.0, 120.0, 170.0}) {
        const double s = std::sin(theta_deg * kDeg);
        CHECK(pattern_gain_dbi(Pattern::kDipole, theta_deg * kDeg, 1.0) ==
              doctest::Approx(10.0 * std::log10(1.5 * s * s)).epsilon(1e-12));
    }
}

TEST_CASE("tr38901 element: boresight 8 dBi, -4 dBi at phi = 65 deg, floor at -22 dBi") {
    CHECK(pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, 0.0) == doctest::Approx(8.0));
    CHECK(pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, 65.0 * kDeg) == doctest::Approx(-4.0));
    CHECK(pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, 180.0 * kDeg) == doctest::Approx(-22.0));
    // Zenith: vertical attenuation 12*(90/65)^2 dB, horizontal zero.
    CHECK(pattern_gain_dbi(Pattern::kTr38901, 0.0, 0.0) ==
          doctest::Approx(8.0 - 12.0 * (90.0 / 65.0) * (90.0 / 65.0)));
}

TEST_CASE("tr38901 principal cuts are monotone down to the side-lobe floor") {
    double prev = pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, 0.0);
    for (int d = 1; d <= 180; ++d) {
        const double g = pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, d * kDeg);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
    prev = pattern_gain_dbi(Pattern::kTr38901, 90.0 * kDeg, 0.0);
    for (int d = 1; d <= 90; ++d) {
        const double g = pattern_gain_dbi(Pattern::kTr38901, (90.0 - d) * kDeg, 0.0);
        CHECK(g <= prev + 1e-12);
        prev = g;
    }
}

TEST_CASE("dipole gains are azimuth symmetric in the local frame") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> theta(0.01, M_PI - 0.01), phi(0, 2 * M_PI);
    for (int i = 0; i < 200; ++i) {
        const double t = theta(rng);
        for (const Pattern p : {Pattern::kDipole, Pattern::kHwDipole}) {
            CHECK(pattern_gain_dbi(p, t, phi(rng)) ==
                  doctest::Approx(pattern_gain_dbi(p, t, 0.0)).epsilon(1e-14));
        }
    }
}

TEST_CASE("world_to_local: identity and the compass-azimuth convention") {
    const Vec3 east{1, 0, 0};
    const Vec3 north{0, 1, 0};

    const Orientation identity{};
    CHECK((world_to_local(identity, east) - east).norm() < 1e-15);
    CHECK((world_to_local(identity, north) - north).norm() < 1e-15);

    // Azimuth 90: boresight east, so east maps to the local boresight (+y).
    const Orientation az90{90.0, 0.0, 0.0};
    const Vec3 local = world_to_local(az90, east);
    CHECK(local.y == doctest::Approx(1.0));
    CHECK(std::fabs(local.x) < 1e-12);
    CHECK(std::fabs(local.z) < 1e-12);

    // Negative tilt points the boresight downward.
    const Vec3 bore = local_to_world(Orientation{90.0, -5.0, 0.0}, {0, 1, 0});
    CHECK(bore.z == doctest::Approx(std::sin(-5.0 * kDeg)));
    CHECK(bore.x == doctest::Approx(std::cos(-5.0 * kDeg)));
}

TEST_CASE("orientation round trips are exact to 1e-12") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> az(0, 360), tilt(-90, 90), roll(-180, 180);
    for (int i = 0; i < 300; ++i) {
        const Orientation o{az(rng), tilt(rng), roll(rng)};
        const Vec3 v = random_unit(rng);
        const Vec3 rt = local_to_world(o, world_to_local(o, v));
        CHECK((rt - v).norm() < 1e-12);
        CHECK(std::fabs(world_to_local(o, v).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("rotating the pattern and counter-rotating the direction is a no-op") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> az(0, 360), tilt(-90, 90), roll(-180, 180);
    for (const Pattern p : {Pattern::kDipole, Pattern::kHwDipole, Pattern::kTr38901}) {
        for (int i = 0; i < 100; ++i) {
            const Orientation o{az(rng), tilt(rng), roll(rng)};
            const Vec3 d = random_unit(rng);
            const AntennaConfig rotated{p, o};
            const AntennaConfig plain{p, {}};
            CHECK(gain_dbi(rotated, d) ==
                  doctest::Approx(gain_dbi(plain, world_to_local(o, d))).epsilon(1e-12));
        }
    }
}

TEST_CASE("dipole patterns radiate the same total power as iso within 0.5%") {
    CHECK(std::fabs(normalized_radiated_power(Pattern::kDipole) - 1.0) < 0.005);
    CHECK(std::fabs(normalized_radiated_power(Pattern::kHwDipole) - 1.0) < 0.005);
    CHECK(normalized_radiated_power(Pattern::kIso) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pattern names round trip") {
    for (const Pattern p :
         {Pattern::kIso, Pattern::kDipole, Pattern::kHwDipole, Pattern::kTr38901}) {
        CHECK(pattern_from_name(pattern_name(p)) == p);
    }
    CHECK_THROWS_AS(pattern_from_name("parabolic"), std::invalid_argument);
}
