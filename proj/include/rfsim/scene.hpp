#ifndef RFSIM_SCENE_HPP
#define RFSIM_SCENE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rfsim/geodesy.hpp"
#include "rfsim/material.hpp"
#include "rfsim/vec3.hpp"

namespace rfsim::scene {

/// Self-intersection guard for secondary rays and segment endpoints, meters.
inline constexpr double kRayEpsilon = 1e-4;

/// 2-D building outline in geographic coordinates. The ring may repeat the
/// first vertex at the end; it is normalized away on build.
struct Footprint {
    std::string id;
    std::vector<geo::GeoPoint> ring;
    std::optional<int> floors;
};

struct BuildingPrism {
    std::string id;
    std::vector<Vec3> base;  // ENU, z = 0, counter-clockwise
    double height = 0.0;
};

/// Planar polygonal face: a prism wall, a roof, or the ground rectangle.
struct Face {
    int prism_index = -1;  // -1 = ground
    Vec3 normal;           // unit, outward (walls) or +z (roof, ground)
    double plane_offset = 0.0;  // dot(normal, p) == plane_offset on the plane
    std::vector<Vec3> boundary;
};

struct Triangle {
    Vec3 a, b, c;
    int face = 0;
};

struct Hit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;          // stored face normal, not flipped toward the ray
    int face = 0;
    int prism_index = -1;  // -1 = ground
};

struct SceneOptions {
    Material material = Material::concrete();
    double ground_margin_m = 500.0;
    double default_height_m = 10.0;  // prism height when floors is absent
    double floor_height_m = 3.0;     // height per floor when floors is given
    std::vector<Vec3> cover_points;  // ENU points the ground plane must cover
};

/// Immutable extruded-prism city model with a triangle BVH. All queries are
/// const and safe to call concurrently.
class Scene {
public:
    static Scene build(const std::vector<Footprint>& footprints, const geo::GeoPoint& origin,
                       SceneOptions options = {});

    /// Nearest intersection with t in (kRayEpsilon, t_max). Exact-t ties are
    /// broken toward the smaller face index so results do not depend on
    /// triangle or index layout.
    std::optional<Hit> first_hit(const Vec3& ray_origin, const Vec3& ray_dir, double t_max) const;

    /// True when the open segment a->b (endpoints excluded by kRayEpsilon) is
    /// unobstructed. Symmetric by construction.
    bool is_los(const Vec3& a, const Vec3& b) const;

    const std::vector<BuildingPrism>& prisms() const { return prisms_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Material& material() const { return material_; }
    const geo::GeoPoint& origin() const { return origin_; }
    int ground_face() const { return ground_face_; }

    /// "GROUND" for the ground plane, otherwise the owning prism id.
    const std::string& owner_name(int prism_index) const;

    /// Ground rectangle corners, {min, max} in ENU.
    std::array<Vec3, 2> ground_extent() const { return {ground_min_, ground_max_}; }

    /// Point-in-face test for a point already on the face plane.
    bool face_contains(int face, const Vec3& p) const;

private:
    struct BvhNode {
        Vec3 bmin, bmax;
        int left = -1, right = -1;
        int first = 0, count = 0;  // leaf when count > 0
    };

    void build_bvh();
    int build_bvh_node(std::vector<int>& order, int begin, int end);

    geo::GeoPoint origin_;
    Material material_;
    std::vector<BuildingPrism> prisms_;
    std::vector<Face> faces_;
    std::vector<Triangle> triangles_;
    std::vector<BvhNode> nodes_;
    std::vector<int> tri_order_;
    int ground_face_ = 0;
    Vec3 ground_min_, ground_max_;
};

}  // namespace rfsim::scene

#endif  // RFSIM_SCENE_HPP
