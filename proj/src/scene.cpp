#include "rfsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "rfsim/polygon.hpp"

namespace rfsim::scene {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinFootprintArea = 1e-9;  // m^2

struct TriPrecomp {
    Vec3 a, e1, e2;
};

// Moller-Trumbore, double sided. Returns t or infinity on miss.
inline double intersect_triangle(const Vec3& o, const Vec3& d, const Vec3& a, const Vec3& e1,
                                 const Vec3& e2) {
    const Vec3 pvec = cross(d, e2);
    const double det = dot(e1, pvec);
    if (std::fabs(det) < 1e-14) return kInf;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = o - a;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return kInf;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(d, qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return kInf;
    return dot(e2, qvec) * inv_det;
}

inline void expand(Vec3& bmin, Vec3& bmax, const Vec3& p) {
    bmin.x = std::min(bmin.x, p.x);
    bmin.y = std::min(bmin.y, p.y);
    bmin.z = std::min(bmin.z, p.z);
    bmax.x = std::max(bmax.x, p.x);
    bmax.y = std::max(bmax.y, p.y);
    bmax.z = std::max(bmax.z, p.z);
}

// Slab test against [bmin, bmax]; true when the box overlaps (eps, t_best).
inline bool box_hit(const Vec3& o, const Vec3& inv_d, const Vec3& bmin, const Vec3& bmax,
                    double t_best) {
    double t0 = (bmin.x - o.x) * inv_d.x;
    double t1 = (bmax.x - o.x) * inv_d.x;
    if (t0 > t1) std::swap(t0, t1);
    double tmin = t0, tmax = t1;

    t0 = (bmin.y - o.y) * inv_d.y;
    t1 = (bmax.y - o.y) * inv_d.y;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);

    t0 = (bmin.z - o.z) * inv_d.z;
    t1 = (bmax.z - o.z) * inv_d.z;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);

    return tmin <= tmax && tmax > kRayEpsilon && tmin < t_best;
}

std::vector<Vec2> to_ring2d(const Footprint& fp, const geo::GeoPoint& origin) {
    std::vector<Vec2> ring;
    ring.reserve(fp.ring.size());
    for (const auto& gp : fp.ring) {
        const geo::EnuPoint e = geo::to_enu(gp, origin);
        ring.push_back({e.x, e.y});
    }
    // Closed ring: drop the repeated last vertex, then any consecutive dupes.
    while (ring.size() > 1 && ring.front().x == ring.back().x && ring.front().y == ring.back().y) {
        ring.pop_back();
    }
    std::vector<Vec2> cleaned;
    for (const auto& v : ring) {
        if (cleaned.empty() || cleaned.back().x != v.x || cleaned.back().y != v.y) {
            cleaned.push_back(v);
        }
    }
    return cleaned;
}

}  // namespace

Scene Scene::build(const std::vector<Footprint>& footprints, const geo::GeoPoint& origin,
                   SceneOptions options) {
    Scene s;
    s.origin_ = origin;
    s.material_ = options.material;

    Vec3 bmin{kInf, kInf, 0.0}, bmax{-kInf, -kInf, 0.0};

    for (const auto& fp : footprints) {
        std::vector<Vec2> ring = to_ring2d(fp, origin);
        if (ring.size() < 3) {
            throw std::invalid_argument("footprint '" + fp.id + "': fewer than 3 distinct vertices");
        }
        double area = signed_area(ring);
        if (std::fabs(area) < kMinFootprintArea) {
            throw std::invalid_argument("footprint '" + fp.id + "': degenerate (zero area) polygon");
        }
        if (!is_simple_polygon(ring)) {
            throw std::invalid_argument("footprint '" + fp.id + "': self-intersecting polygon");
        }
        if (area < 0.0) std::reverse(ring.begin(), ring.end());

        double height = options.default_height_m;
        if (fp.floors.has_value()) {
            if (*fp.floors <= 0) {
                throw std::invalid_argument("footprint '" + fp.id + "': floors must be positive");
            }
            height = options.floor_height_m * static_cast<double>(*fp.floors);
        }

        BuildingPrism prism;
        prism.id = fp.id;
        prism.height = height;
        prism.base.reserve(ring.size());
        for (const auto& v : ring) {
            prism.base.push_back({v.x, v.y, 0.0});
            expand(bmin, bmax, {v.x, v.y, 0.0});
        }
        const int prism_index = static_cast<int>(s.prisms_.size());
        s.prisms_.push_back(std::move(prism));
        const BuildingPrism& pr = s.prisms_.back();

        const int n = static_cast<int>(ring.size());
        // Walls: one rectangular face per base edge, outward normal.
        for (int i = 0; i < n; ++i) {
            const Vec3& a = pr.base[i];
            const Vec3& b = pr.base[(i + 1) % n];
            const Vec3 up{0.0, 0.0, height};
            Vec3 normal{b.y - a.y, a.x - b.x, 0.0};
            normal = normal.normalized();

            Face face;
            face.prism_index = prism_index;
            face.normal = normal;
            face.plane_offset = dot(normal, a);
            face.boundary = {a, b, b + up, a + up};
            const int face_index = static_cast<int>(s.faces_.size());
            s.faces_.push_back(std::move(face));

            s.triangles_.push_back({a, b, b + up, face_index});
            s.triangles_.push_back({a, b + up, a + up, face_index});
        }

        // Roof: the base ring lifted to z = height.
        {
            Face face;
            face.prism_index = prism_index;
            face.normal = {0.0, 0.0, 1.0};
            face.plane_offset = height;
            face.boundary.reserve(ring.size());
            for (const auto& v : pr.base) face.boundary.push_back({v.x, v.y, height});
            const int face_index = static_cast<int>(s.faces_.size());

            const auto tris = ear_clip(ring);
            for (const auto& t : tris) {
                s.triangles_.push_back({face.boundary[t[0]], face.boundary[t[1]],
                                        face.boundary[t[2]], face_index});
            }
            s.faces_.push_back(std::move(face));
        }
    }

    for (const auto& p : options.cover_points) expand(bmin, bmax, {p.x, p.y, 0.0});
    if (!(bmin.x <= bmax.x)) {
        bmin = {0.0, 0.0, 0.0};
        bmax = {0.0, 0.0, 0.0};
    }

    // Ground rectangle with the configured margin.
    const double m = options.ground_margin_m;
    s.ground_min_ = {bmin.x - m, bmin.y - m, 0.0};
    s.ground_max_ = {bmax.x + m, bmax.y + m, 0.0};
    {
        Face face;
        face.prism_index = -1;
        face.normal = {0.0, 0.0, 1.0};
        face.plane_offset = 0.0;
        face.boundary = {{s.ground_min_.x, s.ground_min_.y, 0.0},
                         {s.ground_max_.x, s.ground_min_.y, 0.0},
                         {s.ground_max_.x, s.ground_max_.y, 0.0},
                         {s.ground_min_.x, s.ground_max_.y, 0.0}};
        s.ground_face_ = static_cast<int>(s.faces_.size());
        s.triangles_.push_back({face.boundary[0], face.boundary[1], face.boundary[2], s.ground_face_});
        s.triangles_.push_back({face.boundary[0], face.boundary[2], face.boundary[3], s.ground_face_});
        s.faces_.push_back(std::move(face));
    }

    s.build_bvh();
    return s;
}

void Scene::build_bvh() {
    tri_order_.resize(triangles_.size());
    for (size_t i = 0; i < tri_order_.size(); ++i) tri_order_[i] = static_cast<int>(i);
    nodes_.clear();
    nodes_.reserve(2 * triangles_.size());
    build_bvh_node(tri_order_, 0, static_cast<int>(tri_order_.size()));
}

int Scene::build_bvh_node(std::vector<int>& order, int begin, int end) {
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Vec3 bmin{kInf, kInf, kInf}, bmax{-kInf, -kInf, -kInf};
    for (int i = begin; i < end; ++i) {
        const Triangle& t = triangles_[order[i]];
        expand(bmin, bmax, t.a);
        expand(bmin, bmax, t.b);
        expand(bmin, bmax, t.c);
    }
    nodes_[node_index].bmin = bmin;
    nodes_[node_index].bmax = bmax;

    const int count = end - begin;
    if (count <= 4) {
        nodes_[node_index].first = begin;
        nodes_[node_index].count = count;
        return node_index;
    }

    const Vec3 extent = bmax - bmin;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > (axis == 0 ? extent.x : extent.y)) axis = 2;

    auto centroid = [this, axis](int tri) {
        const Triangle& t = triangles_[tri];
        const Vec3 c = (t.a + t.b + t.c) / 3.0;
        return axis == 0 ? c.x : (axis == 1 ? c.y : c.z);
    };
    const int mid = begin + count / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](int lhs, int rhs) { return centroid(lhs) < centroid(rhs); });

    const int left = build_bvh_node(order, begin, mid);
    const int right = build_bvh_node(order, mid, end);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

std::optional<Hit> Scene::first_hit(const Vec3& ray_origin, const Vec3& ray_dir,
                                    double t_max) const {
    if (nodes_.empty()) return std::nullopt;
    const Vec3 inv_d{1.0 / ray_dir.x, 1.0 / ray_dir.y, 1.0 / ray_dir.z};

    double best_t = t_max;
    int best_face = std::numeric_limits<int>::max();
    bool found = false;

    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const BvhNode& node = nodes_[stack[--top]];
        if (!box_hit(ray_origin, inv_d, node.bmin, node.bmax, best_t)) continue;
        if (node.count > 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const Triangle& tri = triangles_[tri_order_[i]];
                const double t = intersect_triangle(ray_origin, ray_dir, tri.a, tri.b - tri.a,
                                                    tri.c - tri.a);
                if (t <= kRayEpsilon || t > best_t) continue;
                if (t == best_t && tri.face >= best_face) continue;
                best_t = t;
                best_face = tri.face;
                found = true;
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }

    if (!found || best_t >= t_max) return std::nullopt;
    const Face& face = faces_[best_face];
    Hit hit;
    hit.t = best_t;
    hit.point = ray_origin + ray_dir * best_t;
    hit.normal = face.normal;
    hit.face = best_face;
    hit.prism_index = face.prism_index;
    return hit;
}

bool Scene::is_los(const Vec3& a, const Vec3& b) const {
    // Canonical endpoint order makes the test exactly symmetric.
    const Vec3* p = &a;
    const Vec3* q = &b;
    if (std::tie(b.x, b.y, b.z) < std::tie(a.x, a.y, a.z)) std::swap(p, q);
    const Vec3 d = *q - *p;
    const double len = d.norm();
    if (len == 0.0) throw std::invalid_argument("is_los: endpoints coincide");
    return !first_hit(*p, d / len, len - kRayEpsilon).has_value();
}

const std::string& Scene::owner_name(int prism_index) const {
    static const std::string kGround = "GROUND";
    if (prism_index < 0) return kGround;
    return prisms_[static_cast<size_t>(prism_index)].id;
}

bool Scene::face_contains(int face_index, const Vec3& p) const {
    const Face& f = faces_[static_cast<size_t>(face_index)];
    // Project along the dominant normal axis, then 2-D crossing test.
    const double ax = std::fabs(f.normal.x);
    const double ay = std::fabs(f.normal.y);
    const double az = std::fabs(f.normal.z);
    int u = 0, v = 1;
    if (az >= ax && az >= ay) {
        u = 0;
        v = 1;
    } else if (ax >= ay) {
        u = 1;
        v = 2;
    } else {
        u = 0;
        v = 2;
    }
    auto coord = [](const Vec3& w, int axis) { return axis == 0 ? w.x : (axis == 1 ? w.y : w.z); };

    bool inside = false;
    const size_t n = f.boundary.size();
    const double px = coord(p, u);
    const double py = coord(p, v);
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = coord(f.boundary[i], u), yi = coord(f.boundary[i], v);
        const double xj = coord(f.boundary[j], u), yj = coord(f.boundary[j], v);
        if ((yi > py) != (yj > py)) {
            const double x_cross = xj + (py - yj) / (yi - yj) * (xi - xj);
            if (px < x_cross) inside = !inside;
        }
    }
    return inside;
}

}  // namespace rfsim::scene
