#ifndef RFSIM_POLYGON_HPP
#define RFSIM_POLYGON_HPP

#include <array>
#include <vector>

namespace rfsim::scene {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Signed area of a closed polygon given as an open ring (no repeated last
/// vertex). Positive for counter-clockwise winding.
double signed_area(const std::vector<Vec2>& ring);

/// True when no two non-adjacent edges intersect and no vertex repeats.
bool is_simple_polygon(const std::vector<Vec2>& ring);

/// Ear-clipping triangulation of a simple CCW polygon. Returns vertex index
/// triples that partition the polygon exactly. Throws std::invalid_argument
/// on degenerate input.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& ring);

}  // namespace rfsim::scene

#endif  // RFSIM_POLYGON_HPP
