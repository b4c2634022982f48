#ifndef RFSIM_OBJ_IO_HPP
#define RFSIM_OBJ_IO_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "rfsim/scene.hpp"

namespace rfsim::scene {

/// Wavefront OBJ dump of the scene mesh: one object per prism plus the
/// ground. Vertex coordinates are printed with round-trip precision so the
/// file re-imports to an identical triangle set.
void write_obj(const Scene& scene, std::ostream& out, const std::string& comment = {});

struct ObjTriangle {
    std::string object;
    std::array<Vec3, 3> v;
};

/// Minimal OBJ reader covering what write_obj emits (v, f, o, comments).
std::vector<ObjTriangle> read_obj(std::istream& in);

}  // namespace rfsim::scene

#endif  // RFSIM_OBJ_IO_HPP
