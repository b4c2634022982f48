#ifndef RFSIM_JSON_IO_HPP
#define RFSIM_JSON_IO_HPP

#include <json.hpp>

#include "rfsim/devices.hpp"
#include "rfsim/propagation.hpp"

namespace rfsim {

nlohmann::json antenna_to_json(const antenna::AntennaConfig& a);
antenna::AntennaConfig antenna_from_json(const nlohmann::json& j);

nlohmann::json station_to_json(const StationConfig& s);
StationConfig station_from_json(const nlohmann::json& j);

nlohmann::json ue_to_json(const UeConfig& u);
UeConfig ue_from_json(const nlohmann::json& j);

nlohmann::json solver_to_json(const prop::SolverConfig& cfg);
prop::SolverConfig solver_from_json(const nlohmann::json& j);

/// Set one solver field by its wire name ("samples_per_src", "frequency",
/// ...). Throws on unknown names or ill-typed values.
void set_solver_field(prop::SolverConfig& cfg, const std::string& field,
                      const nlohmann::json& value);

}  // namespace rfsim

#endif  // RFSIM_JSON_IO_HPP
