#include "rfsim/polygon.hpp"

#include <cmath>
#include <stdexcept>

namespace rfsim::scene {

namespace {

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

// Proper or improper intersection of segments [a,b] and [c,d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = cross2(c, d, a);
    const double d2 = cross2(c, d, b);
    const double d3 = cross2(a, b, c);
    const double d4 = cross2(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment(a, c, d)) return true;
    if (d2 == 0 && on_segment(b, c, d)) return true;
    if (d3 == 0 && on_segment(c, a, b)) return true;
    if (d4 == 0 && on_segment(d, a, b)) return true;
    return false;
}

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d1 = cross2(a, b, p);
    const double d2 = cross2(b, c, p);
    const double d3 = cross2(c, a, p);
    const bool has_neg = (d1 < 0) || (d2 < 0) || (d3 < 0);
    const bool has_pos = (d1 > 0) || (d2 > 0) || (d3 > 0);
    return !(has_neg && has_pos);
}

}  // namespace

double signed_area(const std::vector<Vec2>& ring) {
    double area2 = 0.0;
    const size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % n];
        area2 += a.x * b.y - a.y * b.x;
    }
    return 0.5 * area2;
}

bool is_simple_polygon(const std::vector<Vec2>& ring) {
    const size_t n = ring.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (ring[i].x == ring[j].x && ring[i].y == ring[j].y) return false;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex with edge i.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(a, b, ring[j], ring[(j + 1) % n])) return false;
        }
    }
    return true;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& ring) {
    const int n = static_cast<int>(ring.size());
    if (n < 3) throw std::invalid_argument("ear_clip: polygon needs at least 3 vertices");

    std::vector<int> idx(ring.size());
    for (int i = 0; i < n; ++i) idx[i] = i;

    std::vector<std::array<int, 3>> tris;
    tris.reserve(ring.size() - 2);

    while (idx.size() > 3) {
        const int m = static_cast<int>(idx.size());
        bool clipped = false;

        // Drop collinear vertices first; they form zero-area ears.
        for (int i = 0; i < m; ++i) {
            const Vec2& prev = ring[idx[(i + m - 1) % m]];
            const Vec2& cur = ring[idx[i]];
            const Vec2& next = ring[idx[(i + 1) % m]];
            if (cross2(prev, cur, next) == 0.0) {
                idx.erase(idx.begin() + i);
                clipped = true;
                break;
            }
        }
        if (clipped) continue;

        for (int i = 0; i < m; ++i) {
            const int ip = idx[(i + m - 1) % m];
            const int ic = idx[i];
            const int in = idx[(i + 1) % m];
            if (cross2(ring[ip], ring[ic], ring[in]) <= 0.0) continue;  // reflex

            bool contains_other = false;
            for (int j = 0; j < m; ++j) {
                const int v = idx[j];
                if (v == ip || v == ic || v == in) continue;
                if (point_in_triangle(ring[v], ring[ip], ring[ic], ring[in])) {
                    contains_other = true;
                    break;
                }
            }
            if (contains_other) continue;

            tris.push_back({ip, ic, in});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }

        if (!clipped) {
            throw std::invalid_argument("ear_clip: no ear found (polygon not simple?)");
        }
    }

    if (cross2(ring[idx[0]], ring[idx[1]], ring[idx[2]]) != 0.0) {
        tris.push_back({idx[0], idx[1], idx[2]});
    }
    return tris;
}

}  // namespace rfsim::scene
