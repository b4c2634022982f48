#ifndef RFSIM_PIPELINE_HPP
#define RFSIM_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rfsim/dataset.hpp"
#include "rfsim/run_config.hpp"
#include "rfsim/scene.hpp"

namespace rfsim {

/// Everything a command needs after ingest: corrected station registry in
/// registry order, UEs with defaults applied, the real matrix aligned to
/// both, and the scene built around them.
struct LoadedRun {
    RunConfig cfg;
    geo::GeoPoint enu_origin;
    std::vector<StationConfig> stations;
    std::vector<UeConfig> ues;
    RssiMatrix real;
    scene::Scene scene;
};

/// ENU anchor: centroid of the UE bounding box (falls back to the footprint
/// bounding box when no measurements are given).
geo::GeoPoint compute_origin(const std::vector<UeConfig>& ues);

LoadedRun load_run(const RunConfig& cfg);

/// Scene-only subset of load_run for `scene` commands: footprints are
/// required, measurements/stations optional (used as ground cover when
/// present).
struct LoadedScene {
    geo::GeoPoint enu_origin;
    scene::Scene scene;
};
LoadedScene load_scene_only(const RunConfig& cfg);

}  // namespace rfsim

#endif  // RFSIM_PIPELINE_HPP
