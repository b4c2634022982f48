#include "rfsim/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "rfsim/geojson.hpp"

namespace rfsim {

namespace {

geo::GeoPoint bbox_centroid(const std::vector<geo::GeoPoint>& points) {
    if (points.empty()) throw std::invalid_argument("cannot anchor ENU frame: no points");
    double lat_min = points[0].lat(), lat_max = points[0].lat();
    double lon_min = points[0].lon(), lon_max = points[0].lon();
    for (const auto& p : points) {
        lat_min = std::min(lat_min, p.lat());
        lat_max = std::max(lat_max, p.lat());
        lon_min = std::min(lon_min, p.lon());
        lon_max = std::max(lon_max, p.lon());
    }
    return {0.5 * (lat_min + lat_max), 0.5 * (lon_min + lon_max)};
}

std::vector<scene::Footprint> load_footprints_if_any(const RunConfig& cfg) {
    if (cfg.footprints_path.empty()) return {};
    return scene::load_footprints(cfg.footprints_path);
}

scene::Scene build_scene(const RunConfig& cfg, const std::vector<scene::Footprint>& footprints,
                         const geo::GeoPoint& origin, const std::vector<StationConfig>& stations,
                         const std::vector<UeConfig>& ues) {
    scene::SceneOptions options;
    options.material = cfg.material;
    options.ground_margin_m = cfg.ground_margin_m;
    for (const auto& s : stations) options.cover_points.push_back(station_enu(s, origin));
    for (const auto& u : ues) options.cover_points.push_back(ue_enu(u, origin));
    return scene::Scene::build(footprints, origin, options);
}

}  // namespace

geo::GeoPoint compute_origin(const std::vector<UeConfig>& ues) {
    std::vector<geo::GeoPoint> pts;
    pts.reserve(ues.size());
    for (const auto& u : ues) pts.push_back(u.position);
    return bbox_centroid(pts);
}

LoadedRun load_run(const RunConfig& cfg) {
    if (cfg.measurements_path.empty()) {
        throw std::runtime_error("run config: paths.measurements is required for this command");
    }
    if (cfg.stations_path.empty()) {
        throw std::runtime_error("run config: paths.stations is required for this command");
    }

    data::MeasurementSet measured = data::load_measurements(cfg.measurements_path);
    std::vector<StationConfig> registry = data::load_stations(cfg.stations_path);

    if (!cfg.overrides_path.empty()) {
        const auto overrides = data::load_overrides(cfg.overrides_path);
        registry = data::apply_corrections(registry, overrides);
        measured.real = data::apply_corrections_to_matrix(measured.real, overrides);
        std::erase_if(measured.stations, [&](const StationConfig& s) {
            return measured.real.station_index(s.id) < 0;
        });
    }

    LoadedRun run{cfg, {}, {}, {}, {}, {}};
    run.stations = data::merge_station_registry(measured.stations, registry);
    run.ues = std::move(measured.ues);
    data::apply_ue_defaults(run.ues, cfg.ue_defaults, cfg.ue_altitude_m);

    std::vector<std::string> station_order;
    station_order.reserve(run.stations.size());
    for (const auto& s : run.stations) station_order.push_back(s.id);
    run.real = measured.real.reordered(station_order, measured.real.ues());

    run.enu_origin = compute_origin(run.ues);
    run.scene = build_scene(cfg, load_footprints_if_any(cfg), run.enu_origin, run.stations, run.ues);
    return run;
}

LoadedScene load_scene_only(const RunConfig& cfg) {
    if (cfg.footprints_path.empty()) {
        throw std::runtime_error("run config: paths.footprints is required for scene commands");
    }
    const auto footprints = scene::load_footprints(cfg.footprints_path);

    std::vector<StationConfig> stations;
    std::vector<UeConfig> ues;
    geo::GeoPoint origin;
    if (!cfg.measurements_path.empty()) {
        data::MeasurementSet measured = data::load_measurements(cfg.measurements_path);
        ues = std::move(measured.ues);
        data::apply_ue_defaults(ues, cfg.ue_defaults, cfg.ue_altitude_m);
        origin = compute_origin(ues);
    } else {
        std::vector<geo::GeoPoint> pts;
        for (const auto& fp : footprints) {
            for (const auto& p : fp.ring) pts.push_back(p);
        }
        if (pts.empty()) throw std::runtime_error(cfg.footprints_path + ": no footprint vertices");
        double lat_min = pts[0].lat(), lat_max = pts[0].lat();
        double lon_min = pts[0].lon(), lon_max = pts[0].lon();
        for (const auto& p : pts) {
            lat_min = std::min(lat_min, p.lat());
            lat_max = std::max(lat_max, p.lat());
            lon_min = std::min(lon_min, p.lon());
            lon_max = std::max(lon_max, p.lon());
        }
        origin = geo::GeoPoint(0.5 * (lat_min + lat_max), 0.5 * (lon_min + lon_max));
    }
    if (!cfg.stations_path.empty()) {
        stations = data::load_stations(cfg.stations_path);
        if (!cfg.overrides_path.empty()) {
            stations = data::apply_corrections(stations, data::load_overrides(cfg.overrides_path));
        }
    }

    LoadedScene out{origin, build_scene(cfg, footprints, origin, stations, ues)};
    return out;
}

}  // namespace rfsim
