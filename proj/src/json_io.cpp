#include "rfsim/json_io.hpp"

#include <stdexcept>

namespace rfsim {

using nlohmann::json;

json antenna_to_json(const antenna::AntennaConfig& a) {
    return {{"pattern", antenna::pattern_name(a.pattern)},
            {"azimuth_deg", a.orientation.azimuth_deg},
            {"tilt_deg", a.orientation.tilt_deg},
            {"roll_deg", a.orientation.roll_deg}};
}

antenna::AntennaConfig antenna_from_json(const json& j) {
    antenna::AntennaConfig a;
    a.pattern = antenna::pattern_from_name(j.value("pattern", std::string("iso")));
    a.orientation.azimuth_deg = j.value("azimuth_deg", 0.0);
    a.orientation.tilt_deg = j.value("tilt_deg", 0.0);
    a.orientation.roll_deg = j.value("roll_deg", 0.0);
    return a;
}

json station_to_json(const StationConfig& s) {
    json j = antenna_to_json(s.antenna);
    j["id"] = s.id;
    j["lat"] = s.position.lat();
    j["lon"] = s.position.lon();
    j["altitude_m"] = s.altitude_m;
    j["tx_power_dbm"] = s.tx_power_dbm;
    return j;
}

StationConfig station_from_json(const json& j) {
    StationConfig s;
    s.id = j.at("id").get<std::string>();
    s.position = geo::GeoPoint(j.at("lat").get<double>(), j.at("lon").get<double>());
    s.altitude_m = j.at("altitude_m").get<double>();
    s.antenna = antenna_from_json(j);
    s.tx_power_dbm = j.value("tx_power_dbm", 43.0);
    return s;
}

json ue_to_json(const UeConfig& u) {
    json j = antenna_to_json(u.antenna);
    j["id"] = u.id;
    j["lat"] = u.position.lat();
    j["lon"] = u.position.lon();
    j["alt_m"] = u.position.alt();
    return j;
}

UeConfig ue_from_json(const json& j) {
    UeConfig u;
    u.id = j.at("id").get<std::string>();
    u.position = geo::GeoPoint(j.at("lat").get<double>(), j.at("lon").get<double>(),
                               j.value("alt_m", kDefaultUeAltitudeM));
    u.antenna = antenna_from_json(j);
    return u;
}

json solver_to_json(const prop::SolverConfig& cfg) {
    return {{"max_num_paths_per_src", cfg.max_num_paths_per_src},
            {"samples_per_src", cfg.samples_per_src},
            {"max_depth", cfg.max_depth},
            {"synthetic_array", cfg.synthetic_array},
            {"specular_reflection", cfg.specular_reflection},
            {"diffuse_reflection", cfg.diffuse_reflection},
            {"refraction", cfg.refraction},
            {"frequency_hz", cfg.frequency_hz},
            {"scattering_coefficient", cfg.scattering_coefficient},
            {"transmission_extra_loss_db", cfg.transmission_extra_loss_db}};
}

prop::SolverConfig solver_from_json(const json& j) {
    prop::SolverConfig cfg;
    cfg.max_num_paths_per_src = j.value("max_num_paths_per_src", cfg.max_num_paths_per_src);
    cfg.samples_per_src = j.value("samples_per_src", cfg.samples_per_src);
    cfg.max_depth = j.value("max_depth", cfg.max_depth);
    cfg.synthetic_array = j.value("synthetic_array", cfg.synthetic_array);
    cfg.specular_reflection = j.value("specular_reflection", cfg.specular_reflection);
    cfg.diffuse_reflection = j.value("diffuse_reflection", cfg.diffuse_reflection);
    cfg.refraction = j.value("refraction", cfg.refraction);
    cfg.frequency_hz = j.value("frequency_hz", cfg.frequency_hz);
    cfg.scattering_coefficient = j.value("scattering_coefficient", cfg.scattering_coefficient);
    cfg.transmission_extra_loss_db =
        j.value("transmission_extra_loss_db", cfg.transmission_extra_loss_db);
    return cfg;
}

void set_solver_field(prop::SolverConfig& cfg, const std::string& field, const json& value) {
    auto as_int = [&](const char* name) {
        if (!value.is_number()) throw std::invalid_argument(std::string(name) + ": expected a number");
        return value.get<int>();
    };
    auto as_bool = [&](const char* name) {
        if (!value.is_boolean()) throw std::invalid_argument(std::string(name) + ": expected a boolean");
        return value.get<bool>();
    };
    auto as_double = [&](const char* name) {
        if (!value.is_number()) throw std::invalid_argument(std::string(name) + ": expected a number");
        return value.get<double>();
    };

    if (field == "max_num_paths_per_src") cfg.max_num_paths_per_src = as_int(field.c_str());
    else if (field == "samples_per_src") cfg.samples_per_src = as_int(field.c_str());
    else if (field == "max_depth") cfg.max_depth = as_int(field.c_str());
    else if (field == "synthetic_array") cfg.synthetic_array = as_bool(field.c_str());
    else if (field == "specular_reflection") cfg.specular_reflection = as_bool(field.c_str());
    else if (field == "diffuse_reflection") cfg.diffuse_reflection = as_bool(field.c_str());
    else if (field == "refraction") cfg.refraction = as_bool(field.c_str());
    else if (field == "frequency" || field == "frequency_hz") cfg.frequency_hz = as_double(field.c_str());
    else if (field == "scattering_coefficient") cfg.scattering_coefficient = as_double(field.c_str());
    else if (field == "transmission_extra_loss_db") cfg.transmission_extra_loss_db = as_double(field.c_str());
    else throw std::invalid_argument("unknown solver field '" + field + "'");
}

}  // namespace rfsim
