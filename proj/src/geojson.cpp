#include "rfsim/geojson.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rfsim::scene {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
    throw std::runtime_error(source + ": " + what);
}

std::vector<geo::GeoPoint> parse_ring(const json& ring, const std::string& source,
                                      const std::string& feature_id) {
    std::vector<geo::GeoPoint> out;
    if (!ring.is_array()) fail(source, "feature '" + feature_id + "': ring is not an array");
    out.reserve(ring.size());
    for (const auto& pos : ring) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            fail(source, "feature '" + feature_id + "': coordinate is not a [lon, lat] pair");
        }
        // GeoJSON stores [lon, lat].
        out.emplace_back(pos[1].get<double>(), pos[0].get<double>());
    }
    return out;
}

std::optional<int> parse_levels(const json& props, const std::string& source,
                                const std::string& feature_id) {
    if (!props.is_object() || !props.contains("building:levels")) return std::nullopt;
    const json& v = props.at("building:levels");
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
        try {
            size_t pos = 0;
            const int levels = std::stoi(v.get<std::string>(), &pos);
            if (pos == v.get<std::string>().size()) return levels;
        } catch (const std::exception&) {
        }
    }
    fail(source, "feature '" + feature_id + "': building:levels is not an integer");
}

void append_polygon(std::vector<Footprint>& out, const json& rings, const std::string& id,
                    std::optional<int> floors, const std::string& source) {
    if (!rings.is_array() || rings.empty()) {
        fail(source, "feature '" + id + "': Polygon has no rings");
    }
    if (rings.size() > 1) {
        fail(source, "feature '" + id + "': interior rings (holes) are not supported");
    }
    Footprint fp;
    fp.id = id;
    fp.floors = floors;
    fp.ring = parse_ring(rings[0], source, id);
    out.push_back(std::move(fp));
}

}  // namespace

std::vector<Footprint> parse_footprints(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
        fail(source, "expected a GeoJSON FeatureCollection");
    }
    if (!doc.contains("features") || !doc["features"].is_array()) {
        fail(source, "FeatureCollection has no features array");
    }

    std::vector<Footprint> out;
    int index = 0;
    for (const auto& feature : doc["features"]) {
        std::string id;
        if (feature.contains("id")) {
            const json& jid = feature["id"];
            id = jid.is_string() ? jid.get<std::string>() : jid.dump();
        } else if (feature.contains("properties") && feature["properties"].is_object() &&
                   feature["properties"].contains("id")) {
            const json& jid = feature["properties"]["id"];
            id = jid.is_string() ? jid.get<std::string>() : jid.dump();
        } else {
            id = "feature_" + std::to_string(index);
        }

        if (!feature.contains("geometry") || feature["geometry"].is_null()) {
            fail(source, "feature '" + id + "': missing geometry");
        }
        const json& geom = feature["geometry"];
        const std::string type = geom.value("type", "");
        const std::optional<int> floors =
            parse_levels(feature.value("properties", json::object()), source, id);

        if (type == "Polygon") {
            append_polygon(out, geom.at("coordinates"), id, floors, source);
        } else if (type == "MultiPolygon") {
            const json& polys = geom.at("coordinates");
            if (!polys.is_array()) fail(source, "feature '" + id + "': bad MultiPolygon");
            int part = 0;
            for (const auto& rings : polys) {
                append_polygon(out, rings, id + "#" + std::to_string(part++), floors, source);
            }
        } else {
            fail(source, "feature '" + id + "': unsupported geometry type '" + type + "'");
        }
        ++index;
    }
    return out;
}

std::vector<Footprint> load_footprints(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open footprints file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_footprints(buf.str(), path);
}

}  // namespace rfsim::scene
