#include "rfsim/run_config.hpp"

#include <cstdio>
#include <stdexcept>

#include "rfsim/io_util.hpp"
#include "rfsim/json_io.hpp"

namespace rfsim {

using nlohmann::json;

namespace {

std::uint64_t fnv1a_str(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Material material_from_json(const json& j) {
    return {j.value("name", std::string("concrete")),
            j.value("relative_permittivity", 5.24),
            j.value("conductivity_ref_s_per_m", 0.0462),
            j.value("conductivity_exponent", 0.7822)};
}

json material_to_json(const Material& m) {
    json j;
    j["name"] = m.name();
    j["relative_permittivity"] = m.relative_permittivity();
    j["conductivity_ref_s_per_m"] = m.conductivity_ref();
    j["conductivity_exponent"] = m.conductivity_exponent();
    return j;
}

}  // namespace

json sweep_axis_to_json(const opt::SweepAxis& axis) {
    json j;
    j["target"] = opt::sweep_target_name(axis.target);
    j["scope"] = axis.scope == opt::SweepScope::kPerStation ? "PER_STATION" : "GLOBAL";
    j["values"] = axis.values;
    if (axis.target == opt::SweepTarget::kSolverField) j["field"] = axis.solver_field;
    return j;
}

opt::SweepAxis sweep_axis_from_json(const json& j, const std::string& source) {
    opt::SweepAxis axis;
    if (!j.contains("target") || !j.at("target").is_string()) {
        throw std::runtime_error(source + ": sweep axis needs a 'target' string");
    }
    axis.target = opt::sweep_target_from_name(j.at("target").get<std::string>());
    const std::string scope = j.value("scope", std::string("GLOBAL"));
    if (scope == "GLOBAL") {
        axis.scope = opt::SweepScope::kGlobal;
    } else if (scope == "PER_STATION") {
        axis.scope = opt::SweepScope::kPerStation;
    } else {
        throw std::runtime_error(source + ": unknown sweep scope '" + scope + "'");
    }
    if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty()) {
        throw std::runtime_error(source + ": sweep axis needs a non-empty 'values' array");
    }
    for (const auto& v : j.at("values")) axis.values.push_back(v);
    axis.solver_field = j.value("field", std::string());
    return axis;
}

RunConfig RunConfig::from_json(const json& j, const std::string& source) {
    RunConfig cfg;
    if (j.contains("paths")) {
        const json& p = j.at("paths");
        cfg.footprints_path = p.value("footprints", std::string());
        cfg.measurements_path = p.value("measurements", std::string());
        cfg.stations_path = p.value("stations", std::string());
        cfg.overrides_path = p.value("overrides", std::string());
        cfg.output_dir = p.value("output_dir", std::string("out"));
    }
    if (j.contains("solver")) cfg.solver = solver_from_json(j.at("solver"));
    if (j.contains("ue_defaults")) {
        cfg.ue_defaults = antenna_from_json(j.at("ue_defaults"));
        cfg.ue_altitude_m = j.at("ue_defaults").value("altitude_m", kDefaultUeAltitudeM);
    }
    if (j.contains("material")) cfg.material = material_from_json(j.at("material"));
    cfg.ground_margin_m = j.value("ground_margin_m", 500.0);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.floor_dbm = j.value("floor_dbm", -150.0);
    cfg.k = j.value("k", 10);
    cfg.split_ratio = j.value("split_ratio", 0.8);
    cfg.workers = j.value("workers", 0);
    if (j.contains("sweep")) cfg.sweep_axis = sweep_axis_from_json(j.at("sweep"), source);
    if (j.contains("optimize")) {
        const json& o = j.at("optimize");
        cfg.objective = o.value("objective", std::string("MEAN_SPEARMAN"));
        cfg.passes = o.value("passes", 1);
        if (o.contains("axes")) {
            for (const auto& a : o.at("axes")) {
                cfg.optimize_axes.push_back(sweep_axis_from_json(a, source));
            }
        }
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    json doc;
    try {
        doc = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": invalid JSON: " + e.what());
    }
    return from_json(doc, path);
}

json RunConfig::to_json() const {
    json j;
    j["paths"] = {{"footprints", footprints_path},
                  {"measurements", measurements_path},
                  {"stations", stations_path},
                  {"overrides", overrides_path},
                  {"output_dir", output_dir}};
    j["solver"] = solver_to_json(solver);
    json ue = antenna_to_json(ue_defaults);
    ue["altitude_m"] = ue_altitude_m;
    j["ue_defaults"] = ue;
    j["material"] = material_to_json(material);
    j["ground_margin_m"] = ground_margin_m;
    j["seed"] = seed;
    j["floor_dbm"] = floor_dbm;
    j["k"] = k;
    j["split_ratio"] = split_ratio;
    j["workers"] = workers;
    if (sweep_axis.has_value()) j["sweep"] = sweep_axis_to_json(*sweep_axis);
    if (!optimize_axes.empty() || objective != "MEAN_SPEARMAN" || passes != 1) {
        json axes = json::array();
        for (const auto& a : optimize_axes) axes.push_back(sweep_axis_to_json(a));
        j["optimize"] = {{"objective", objective}, {"passes", passes}, {"axes", axes}};
    }
    return j;
}

std::string RunConfig::config_hash() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a_str(to_json().dump())));
    return buf;
}

std::string RunConfig::provenance() const {
    return "rfsim seed=" + std::to_string(seed) + " config=" + config_hash();
}

}  // namespace rfsim
