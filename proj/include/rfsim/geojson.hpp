#ifndef RFSIM_GEOJSON_HPP
#define RFSIM_GEOJSON_HPP

#include <string>
#include <vector>

#include "rfsim/scene.hpp"

namespace rfsim::scene {

/// Load building footprints from a GeoJSON FeatureCollection (WGS84,
/// coordinates as [lon, lat]). Polygon features become one footprint each,
/// MultiPolygon features one footprint per outer ring. Interior rings
/// (holes) are rejected. The optional integer property "building:levels"
/// maps to floors.
std::vector<Footprint> load_footprints(const std::string& path);

/// Same, from a JSON string. `source` names the input in error messages.
std::vector<Footprint> parse_footprints(const std::string& text, const std::string& source);

}  // namespace rfsim::scene

#endif  // RFSIM_GEOJSON_HPP
