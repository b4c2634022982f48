#ifndef RFSIM_RUN_CONFIG_HPP
#define RFSIM_RUN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfsim/antenna.hpp"
#include "rfsim/material.hpp"
#include "rfsim/optimizer.hpp"
#include "rfsim/propagation.hpp"

namespace rfsim {

/// One JSON document that fully describes a run; together with the input
/// files it makes every command reproducible. CLI flags override fields
/// one-to-one.
struct RunConfig {
    // Input and output paths.
    std::string footprints_path;
    std::string measurements_path;
    std::string stations_path;
    std::string overrides_path;
    std::string output_dir = "out";

    prop::SolverConfig solver;

    // Global receiver defaults applied to every UE from the measurement set.
    antenna::AntennaConfig ue_defaults;
    double ue_altitude_m = 1.5;

    Material material = Material::concrete();
    double ground_margin_m = 500.0;

    std::uint64_t seed = 1;
    double floor_dbm = -150.0;
    int k = 10;
    double split_ratio = 0.8;
    int workers = 0;  // 0 = RFSIM_WORKERS env var, then hardware default

    std::optional<opt::SweepAxis> sweep_axis;
    std::vector<opt::SweepAxis> optimize_axes;
    std::string objective = "MEAN_SPEARMAN";
    int passes = 1;

    static RunConfig from_json(const nlohmann::json& j, const std::string& source);
    static RunConfig load(const std::string& path);
    nlohmann::json to_json() const;

    /// Stable hex digest of the effective configuration, embedded in output
    /// headers for provenance.
    std::string config_hash() const;

    /// "rfsim seed=<seed> config=<hash>" header line content.
    std::string provenance() const;
};

nlohmann::json sweep_axis_to_json(const opt::SweepAxis& axis);
opt::SweepAxis sweep_axis_from_json(const nlohmann::json& j, const std::string& source);

}  // namespace rfsim

#endif  // RFSIM_RUN_CONFIG_HPP
