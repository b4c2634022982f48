#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rfsim/geodesy.hpp"

using namespace rfsim;
using namespace rfsim::geo;

namespace {

// Independent spherical-earth oracle: one degree of arc is 2*pi*R/360.
constexpr double kMetersPerDegree = 2.0 * M_PI * kEarthRadiusM / 360.0;

}  // namespace

TEST_CASE("geopoint rejects out-of-range coordinates") {
    CHECK_THROWS_AS(GeoPoint(90.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GeoPoint(-91.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GeoPoint(0.0, 180.5), std::invalid_argument);
    CHECK_THROWS_AS(GeoPoint(0.0, -181.0), std::invalid_argument);
    CHECK_NOTHROW(GeoPoint(90.0, -180.0));
}

TEST_CASE("to_enu maps the origin to (0, 0, alt)") {
    const GeoPoint origin(41.9, 12.5);
    const EnuPoint e = to_enu(GeoPoint(41.9, 12.5, 7.25), origin);
    CHECK(std::fabs(e.x) < 1e-6);
    CHECK(std::fabs(e.y) < 1e-6);
    CHECK(std::fabs(e.z - 7.25) < 1e-6);
}

TEST_CASE("one degree of latitude spans ~111.19 km north") {
    const GeoPoint origin(41.9, 12.5);
    const EnuPoint e = to_enu(GeoPoint(42.9, 12.5), origin);
    CHECK(std::fabs(e.y - kMetersPerDegree) / kMetersPerDegree < 1e-3);
    CHECK(std::fabs(e.x) < 1.0);
}

TEST_CASE("to_geo inverts the one-degree-north case") {
    const GeoPoint origin(41.9, 12.5);
    const EnuPoint e = to_enu(GeoPoint(42.9, 12.5), origin);
    const GeoPoint back = to_geo(e, origin);
    CHECK(back.lat() == doctest::Approx(42.9).epsilon(1e-12));
    CHECK(back.lon() == doctest::Approx(12.5).epsilon(1e-12));
}

TEST_CASE("1 km east at the equator shifts longitude by 1000/111194.9 degrees") {
    const GeoPoint origin(0.0, 0.0);
    const GeoPoint p = to_geo(EnuPoint{1000.0, 0.0, 0.0}, origin);
    CHECK(std::fabs(p.lon() - 1000.0 / kMetersPerDegree) < 1e-7);
    CHECK(std::fabs(p.lat()) < 1e-9);
}

TEST_CASE("to_geo(0,0,0) recovers the origin at zero altitude") {
    const GeoPoint origin(41.9, 12.5, 3.0);
    const GeoPoint p = to_geo(EnuPoint{0.0, 0.0, 0.0}, origin);
    CHECK(p.lat() == doctest::Approx(41.9).epsilon(1e-12));
    CHECK(p.lon() == doctest::Approx(12.5).epsilon(1e-12));
    CHECK(std::fabs(p.alt()) < 1e-9);
}

TEST_CASE("round trips are mutual inverses over a 10 km disc") {
    const GeoPoint origin(41.9, 12.5);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> radius(0.0, 10000.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> height(0.0, 100.0);

    for (int i = 0; i < 500; ++i) {
        const double r = radius(rng), a = angle(rng);
        const EnuPoint e{r * std::cos(a), r * std::sin(a), height(rng)};
        const GeoPoint g = to_geo(e, origin);
        const EnuPoint back = to_enu(g, origin);
        CHECK(std::fabs(back.x - e.x) < 1e-3);
        CHECK(std::fabs(back.y - e.y) < 1e-3);
        CHECK(std::fabs(back.z - e.z) < 1e-3);

        // Geographic round trip within 1e-9 degrees.
        const GeoPoint g2 = to_geo(to_enu(g, origin), origin);
        CHECK(std::fabs(g2.lat() - g.lat()) < 1e-9);
        CHECK(std::fabs(g2.lon() - g.lon()) < 1e-9);
    }
}

TEST_CASE("ground_distance basics") {
    const GeoPoint a(41.9, 12.5, 10.0);
    CHECK(ground_distance(a, GeoPoint(41.9, 12.5, 99.0)) == 0.0);

    const GeoPoint b(42.9, 12.5);
    const double d = ground_distance(a, b);
    CHECK(std::fabs(d - kMetersPerDegree) / kMetersPerDegree < 1e-3);
}

TEST_CASE("ground_distance is exactly symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lat(41.0, 43.0);
    std::uniform_real_distribution<double> lon(11.5, 13.5);
    for (int i = 0; i < 200; ++i) {
        const GeoPoint a(lat(rng), lon(rng));
        const GeoPoint b(lat(rng), lon(rng));
        const GeoPoint c(lat(rng), lon(rng));
        CHECK(ground_distance(a, b) == ground_distance(b, a));
        CHECK(ground_distance(a, c) <= ground_distance(a, b) + ground_distance(b, c) + 1e-9);
        if (!(a == b)) CHECK(ground_distance(a, b) > 0.0);
    }
}

TEST_CASE("planar ENU distance agrees with the great circle within 0.1% under 5 km") {
    const GeoPoint origin(41.9, 12.5);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> radius(0.0, 10000.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> sep(1.0, 5000.0);

    for (int i = 0; i < 200; ++i) {
        const double r = radius(rng), a0 = angle(rng), a1 = angle(rng), s = sep(rng);
        const EnuPoint ea{r * std::cos(a0), r * std::sin(a0), 0.0};
        const EnuPoint eb{ea.x + s * std::cos(a1), ea.y + s * std::sin(a1), 0.0};
        const GeoPoint ga = to_geo(ea, origin);
        const GeoPoint gb = to_geo(eb, origin);
        const double planar = std::hypot(eb.x - ea.x, eb.y - ea.y);
        const double geodesic = ground_distance(ga, gb);
        CHECK(std::fabs(planar - geodesic) / geodesic < 1e-3);
    }
}
