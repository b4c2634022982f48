#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <sstream>

#include "rfsim/geojson.hpp"
#include "rfsim/obj_io.hpp"
#include "rfsim/polygon.hpp"
#include "rfsim/scene.hpp"
#include "test_helpers.hpp"

using namespace rfsim;
using namespace rfsim::scene;
using rfsim::testutil::brute_force_first_hit;
using rfsim::testutil::default_origin;
using rfsim::testutil::geo_at;
using rfsim::testutil::rect_footprint;

TEST_CASE("polygon utilities") {
    const std::vector<Vec2> square = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(signed_area(square) == doctest::Approx(4.0));
    CHECK(is_simple_polygon(square));

    const std::vector<Vec2> bowtie = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK(!is_simple_polygon(bowtie));

    // Concave L-shape with a collinear vertex: triangulation must cover the
    // full area.
    const std::vector<Vec2> ell = {{0, 0}, {2, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {0, 3}};
    const auto tris = ear_clip(ell);
    double area = 0.0;
    for (const auto& t : tris) {
        const Vec2 &a = ell[t[0]], &b = ell[t[1]], &c = ell[t[2]];
        area += 0.5 * std::fabs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    }
    CHECK(area == doctest::Approx(signed_area(ell)));
}

TEST_CASE("empty footprint list gives a ground-only scene") {
    SceneOptions options;
    options.cover_points = {{0, 0, 0}};
    const Scene sc = Scene::build({}, default_origin(), options);
    CHECK(sc.prisms().empty());
    CHECK(sc.faces().size() == 1);
    CHECK(sc.triangles().size() == 2);
    CHECK(sc.ground_extent()[0].x == doctest::Approx(-500.0));
    CHECK(sc.ground_extent()[1].y == doctest::Approx(500.0));
}

TEST_CASE("square footprint without floors becomes a 10 m prism") {
    const Scene sc = Scene::build({rect_footprint("sq", 0, 0, 20, 20)}, default_origin());
    REQUIRE(sc.prisms().size() == 1);
    CHECK(sc.prisms()[0].height == doctest::Approx(10.0));
    // 4 walls + roof + ground.
    CHECK(sc.faces().size() == 6);
    // Roof triangulated into 2, walls into 2 each, ground 2.
    CHECK(sc.triangles().size() == 4 * 2 + 2 + 2);
}

TEST_CASE("floors scale prism height by 3 m per floor") {
    const Scene sc = Scene::build({rect_footprint("b", 0, 0, 20, 20, 4)}, default_origin());
    REQUIRE(sc.prisms().size() == 1);
    CHECK(sc.prisms()[0].height == doctest::Approx(12.0));
}

TEST_CASE("invalid footprints are rejected with the offending id") {
    Footprint bowtie;
    bowtie.id = "bow";
    bowtie.ring = {geo_at(0, 0), geo_at(20, 20), geo_at(20, 0), geo_at(0, 20), geo_at(0, 0)};
    CHECK_THROWS_WITH_AS(Scene::build({bowtie}, default_origin()), doctest::Contains("bow"),
                         std::invalid_argument);

    Footprint line;
    line.id = "line";
    line.ring = {geo_at(0, 0), geo_at(10, 0), geo_at(20, 0), geo_at(0, 0)};
    CHECK_THROWS_WITH_AS(Scene::build({line}, default_origin()), doctest::Contains("line"),
                         std::invalid_argument);

    Footprint negative_floors = rect_footprint("nf", 0, 0, 10, 10, 0);
    CHECK_THROWS_AS(Scene::build({negative_floors}, default_origin()), std::invalid_argument);
}

TEST_CASE("first_hit basics") {
    SceneOptions options;
    options.cover_points = {{0, 0, 0}};
    const Scene empty = Scene::build({}, default_origin(), options);

    // Parallel to the ground, above it: no hit.
    CHECK(!empty.first_hit({0, 0, 5}, {1, 0, 0}, 1e9).has_value());

    // Straight down: ground at t = 5, normal +z.
    const auto hit = empty.first_hit({0, 0, 5}, {0, 0, -1}, 1e9);
    REQUIRE(hit.has_value());
    CHECK(hit->t == doctest::Approx(5.0));
    CHECK(hit->normal.z == doctest::Approx(1.0));
    CHECK(hit->prism_index == -1);
    CHECK(empty.owner_name(hit->prism_index) == "GROUND");
}

TEST_CASE("first_hit reaches a wall at the analytic distance") {
    // 10x10 prism centered at x=30: near wall plane at x=25.
    const Scene sc = Scene::build({rect_footprint("cube", 30, 0, 10, 10)}, default_origin());
    const Vec3 origin{0, 0, 5};
    const Vec3 dir{1, 0, 0};
    const auto hit = sc.first_hit(origin, dir, 1e9);
    REQUIRE(hit.has_value());
    CHECK(hit->t == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(hit->normal.x == doctest::Approx(-1.0));
    CHECK(sc.owner_name(hit->prism_index) == "cube");

    // Oblique ray toward the same wall: t scales with the direction cosine.
    const Vec3 oblique = Vec3{1, 0.1, 0.05}.normalized();
    const auto hit2 = sc.first_hit(origin, oblique, 1e9);
    REQUIRE(hit2.has_value());
    CHECK(hit2->t == doctest::Approx(25.0 / oblique.x).epsilon(1e-9));
}

TEST_CASE("t_max clips hits") {
    const Scene sc = Scene::build({rect_footprint("cube", 30, 0, 10, 10)}, default_origin());
    CHECK(!sc.first_hit({0, 0, 5}, {1, 0, 0}, 20.0).has_value());
    CHECK(!sc.first_hit({0, 0, 5}, {1, 0, 0}, 25.0).has_value());  // strict
    CHECK(sc.first_hit({0, 0, 5}, {1, 0, 0}, 25.1).has_value());
}

TEST_CASE("is_los") {
    const Scene sc = Scene::build({rect_footprint("wall", 0, 0, 10, 40)}, default_origin());
    // Above the roof: clear.
    CHECK(sc.is_los({-50, 0, 20}, {50, 0, 20}));
    // Below the roof, opposite sides: blocked.
    CHECK(!sc.is_los({-50, 0, 5}, {50, 0, 5}));
    // Same side: clear.
    CHECK(sc.is_los({-50, 0, 5}, {-20, 10, 5}));
}

TEST_CASE("is_los is exactly symmetric on random scenes") {
    std::mt19937_64 rng(3);
    const Scene sc = rfsim::testutil::random_scene(rng, 12);
    std::uniform_real_distribution<double> xy(-200, 200), z(0.5, 50);
    for (int i = 0; i < 500; ++i) {
        const Vec3 a{xy(rng), xy(rng), z(rng)};
        const Vec3 b{xy(rng), xy(rng), z(rng)};
        CHECK(sc.is_los(a, b) == sc.is_los(b, a));
    }
}

TEST_CASE("indexed first_hit matches the brute-force oracle on random scenes") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> xy(-250, 250), z(0, 60), unit(-1, 1);
    for (int scene_i = 0; scene_i < 5; ++scene_i) {
        const Scene sc = rfsim::testutil::random_scene(rng, 30);
        for (int ray = 0; ray < 400; ++ray) {
            const Vec3 o{xy(rng), xy(rng), z(rng)};
            Vec3 d{unit(rng), unit(rng), unit(rng)};
            if (d.norm() < 1e-6) d = {1, 0, 0};
            d = d.normalized();
            const auto fast = sc.first_hit(o, d, 1e9);
            const auto slow = brute_force_first_hit(sc, o, d, 1e9);
            REQUIRE(fast.has_value() == slow.has_value());
            if (fast) {
                CHECK(fast->t == slow->t);
                CHECK(fast->face == slow->face);
                CHECK(fast->prism_index == slow->prism_index);
            }
        }
    }
}

TEST_CASE("grazing ray along a roof edge is deterministic") {
    const Scene sc = Scene::build({rect_footprint("b", 0, 0, 20, 20)}, default_origin());
    // Runs exactly along the roof plane z=10 over the edge y in [-10, 10].
    const Vec3 o{-30, -10, 10};
    const Vec3 d{1, 0, 0};
    const auto first = sc.first_hit(o, d, 1e9);
    for (int i = 0; i < 10; ++i) {
        const auto again = sc.first_hit(o, d, 1e9);
        CHECK(again.has_value() == first.has_value());
        if (first && again) {
            CHECK(again->t == first->t);
            CHECK(again->face == first->face);
        }
    }
    // The epsilon rule also makes the brute-force agree.
    const auto slow = brute_force_first_hit(sc, o, d, 1e9);
    CHECK(slow.has_value() == first.has_value());
}

TEST_CASE("geojson footprints parse with levels and strict errors") {
    const std::string doc = R"({
      "type": "FeatureCollection",
      "features": [
        {"type": "Feature", "id": "w1",
         "properties": {"building:levels": 4},
         "geometry": {"type": "Polygon", "coordinates":
           [[[12.50, 41.90], [12.501, 41.90], [12.501, 41.901], [12.50, 41.901], [12.50, 41.90]]]}},
        {"type": "Feature",
         "properties": {"building:levels": "3"},
         "geometry": {"type": "Polygon", "coordinates":
           [[[12.502, 41.90], [12.503, 41.90], [12.503, 41.901], [12.502, 41.90]]]}}
      ]})";
    const auto fps = parse_footprints(doc, "test");
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].id == "w1");
    CHECK(fps[0].floors == 4);
    CHECK(fps[0].ring.size() == 5);
    CHECK(fps[1].id == "feature_1");
    CHECK(fps[1].floors == 3);

    CHECK_THROWS_WITH_AS(parse_footprints(R"({"type": "Feature"})", "test"),
                         doctest::Contains("FeatureCollection"), std::runtime_error);

    const std::string with_hole = R"({
      "type": "FeatureCollection",
      "features": [{"type": "Feature", "id": "h",
        "geometry": {"type": "Polygon", "coordinates": [
          [[12.5, 41.9], [12.51, 41.9], [12.51, 41.91], [12.5, 41.9]],
          [[12.502, 41.902], [12.504, 41.902], [12.504, 41.904], [12.502, 41.902]]]}}]})";
    CHECK_THROWS_WITH_AS(parse_footprints(with_hole, "test"), doctest::Contains("holes"),
                         std::runtime_error);
}

TEST_CASE("obj export re-imports to the identical triangle set") {
    const Scene sc = Scene::build(
        {rect_footprint("a", 0, 0, 20, 14, 2), rect_footprint("b", 60, 10, 12, 12)},
        default_origin());
    std::stringstream buf;
    write_obj(sc, buf, "test scene");
    const auto tris = read_obj(buf);
    REQUIRE(tris.size() == sc.triangles().size());

    // Compare as multisets of exact vertex triples.
    auto key = [](const Vec3& a, const Vec3& b, const Vec3& c) {
        std::ostringstream k;
        k.precision(17);
        k << a.x << ' ' << a.y << ' ' << a.z << ' ' << b.x << ' ' << b.y << ' ' << b.z << ' '
          << c.x << ' ' << c.y << ' ' << c.z;
        return k.str();
    };
    std::map<std::string, int> expected, actual;
    for (const auto& t : sc.triangles()) expected[key(t.a, t.b, t.c)]++;
    for (const auto& t : tris) actual[key(t.v[0], t.v[1], t.v[2])]++;
    CHECK(expected == actual);
}
