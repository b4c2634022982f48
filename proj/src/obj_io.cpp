#include "rfsim/obj_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rfsim::scene {

namespace {

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_obj(const Scene& scene, std::ostream& out, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";

    // Group triangles by owner (prism index; -1 = ground).
    int vertex_base = 1;
    auto emit_group = [&](int prism_index, const std::string& name) {
        out << "o " << name << "\n";
        for (const auto& tri : scene.triangles()) {
            if (scene.faces()[tri.face].prism_index != prism_index) continue;
            for (const Vec3* v : {&tri.a, &tri.b, &tri.c}) {
                out << "v " << fmt_coord(v->x) << ' ' << fmt_coord(v->y) << ' ' << fmt_coord(v->z)
                    << "\n";
            }
            out << "f " << vertex_base << ' ' << vertex_base + 1 << ' ' << vertex_base + 2 << "\n";
            vertex_base += 3;
        }
    };

    for (size_t i = 0; i < scene.prisms().size(); ++i) {
        emit_group(static_cast<int>(i), "prism_" + scene.prisms()[i].id);
    }
    emit_group(-1, "ground");
}

std::vector<ObjTriangle> read_obj(std::istream& in) {
    std::vector<Vec3> vertices;
    std::vector<ObjTriangle> tris;
    std::string object;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "o") {
            ls >> object;
        } else if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) {
                throw std::runtime_error("obj line " + std::to_string(line_no) + ": bad vertex");
            }
            vertices.push_back(v);
        } else if (tag == "f") {
            int a = 0, b = 0, c = 0;
            if (!(ls >> a >> b >> c)) {
                throw std::runtime_error("obj line " + std::to_string(line_no) + ": bad face");
            }
            auto at = [&](int idx) -> const Vec3& {
                if (idx < 1 || static_cast<size_t>(idx) > vertices.size()) {
                    throw std::runtime_error("obj line " + std::to_string(line_no) +
                                             ": vertex index out of range");
                }
                return vertices[static_cast<size_t>(idx) - 1];
            };
            tris.push_back({object, {at(a), at(b), at(c)}});
        }
    }
    return tris;
}

}  // namespace rfsim::scene
