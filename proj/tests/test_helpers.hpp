#ifndef RFSIM_TEST_HELPERS_HPP
#define RFSIM_TEST_HELPERS_HPP

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rfsim/geodesy.hpp"
#include "rfsim/scene.hpp"

namespace rfsim::testutil {

inline geo::GeoPoint default_origin() { return {41.9, 12.5}; }

/// Geographic point at a local ENU offset from the origin.
inline geo::GeoPoint geo_at(double east_m, double north_m,
                            const geo::GeoPoint& origin = default_origin()) {
    return geo::to_geo(geo::EnuPoint{east_m, north_m, 0.0}, origin);
}

/// Axis-aligned rectangular footprint centered at (cx, cy), ENU meters.
inline scene::Footprint rect_footprint(const std::string& id, double cx, double cy, double w,
                                       double h, std::optional<int> floors = std::nullopt,
                                       const geo::GeoPoint& origin = default_origin()) {
    scene::Footprint fp;
    fp.id = id;
    fp.floors = floors;
    fp.ring = {geo_at(cx - w / 2, cy - h / 2, origin), geo_at(cx + w / 2, cy - h / 2, origin),
               geo_at(cx + w / 2, cy + h / 2, origin), geo_at(cx - w / 2, cy + h / 2, origin),
               geo_at(cx - w / 2, cy - h / 2, origin)};
    return fp;
}

/// Scene of random rectangular prisms around the origin.
inline scene::Scene random_scene(std::mt19937_64& rng, int n_prisms, double extent = 400.0) {
    std::uniform_real_distribution<double> pos(-extent / 2, extent / 2);
    std::uniform_real_distribution<double> size(5.0, 40.0);
    std::uniform_int_distribution<int> floors(1, 8);
    std::bernoulli_distribution with_floors(0.3);

    std::vector<scene::Footprint> fps;
    for (int i = 0; i < n_prisms; ++i) {
        std::optional<int> f;
        if (with_floors(rng)) f = floors(rng);
        fps.push_back(rect_footprint("b" + std::to_string(i), pos(rng), pos(rng), size(rng),
                                     size(rng), f));
    }
    scene::SceneOptions options;
    options.cover_points = {{-extent, -extent, 0.0}, {extent, extent, 0.0}};
    return scene::Scene::build(fps, default_origin(), options);
}

/// Independent all-triangles intersector with the same contract as
/// Scene::first_hit: nearest t in (eps, t_max), ties to the smaller face.
inline std::optional<scene::Hit> brute_force_first_hit(const scene::Scene& sc, const Vec3& o,
                                                       const Vec3& d, double t_max) {
    double best_t = t_max;
    int best_face = std::numeric_limits<int>::max();
    bool found = false;
    for (const auto& tri : sc.triangles()) {
        const Vec3 e1 = tri.b - tri.a;
        const Vec3 e2 = tri.c - tri.a;
        const Vec3 pvec = cross(d, e2);
        const double det = dot(e1, pvec);
        if (std::fabs(det) < 1e-14) continue;
        const double inv_det = 1.0 / det;
        const Vec3 tvec = o - tri.a;
        const double u = dot(tvec, pvec) * inv_det;
        if (u < 0.0 || u > 1.0) continue;
        const Vec3 qvec = cross(tvec, e1);
        const double v = dot(d, qvec) * inv_det;
        if (v < 0.0 || u + v > 1.0) continue;
        const double t = dot(e2, qvec) * inv_det;
        if (t <= scene::kRayEpsilon || t > best_t) continue;
        if (t == best_t && tri.face >= best_face) continue;
        best_t = t;
        best_face = tri.face;
        found = true;
    }
    if (!found || best_t >= t_max) return std::nullopt;
    scene::Hit hit;
    hit.t = best_t;
    hit.point = o + d * best_t;
    hit.normal = sc.faces()[best_face].normal;
    hit.face = best_face;
    hit.prism_index = sc.faces()[best_face].prism_index;
    return hit;
}

}  // namespace rfsim::testutil

#endif  // RFSIM_TEST_HELPERS_HPP
