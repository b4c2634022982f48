#ifndef RFSIM_PROPAGATION_HPP
#define RFSIM_PROPAGATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfsim/devices.hpp"
#include "rfsim/material.hpp"
#include "rfsim/rssi_matrix.hpp"
#include "rfsim/scene.hpp"
#include "rfsim/vec3.hpp"

namespace rfsim::prop {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

/// Path solver knobs. Defaults follow the experiment configuration: only
/// diffuse scattering and refraction enabled, 1.2 GHz carrier.
struct SolverConfig {
    int max_num_paths_per_src = 10000;
    int samples_per_src = 1000000;
    int max_depth = 3;
    bool synthetic_array = false;  // accepted, no effect: single-element devices
    bool specular_reflection = false;
    bool diffuse_reflection = true;
    bool refraction = true;
    double frequency_hz = 1.2e9;

    // Interaction model knobs.
    double scattering_coefficient = 0.3;      // Lambertian diffuse energy fraction S
    double transmission_extra_loss_db = 5.0;  // per-wall penalty on top of Fresnel
};

enum class PathKind { kLos, kSpecular, kDiffuse, kTransmitted, kMixed };

std::string path_kind_name(PathKind k);

/// One propagation path TX -> ... -> RX. Gains exclude antenna patterns.
/// departure_dir and arrival_dir both point away from their device.
struct PathRecord {
    PathKind kind = PathKind::kLos;
    std::vector<Vec3> vertices;
    double total_length = 0.0;
    Vec3 departure_dir;
    Vec3 arrival_dir;
    double path_gain_db = 0.0;
};

/// Free-space path loss 20*log10(4*pi*d*f/c), positive dB.
double fspl_db(double distance_m, double frequency_hz);

/// Unpolarized Fresnel power reflectance |Gamma|^2 for air -> material at
/// the given incidence cosine (TE/TM average, complex permittivity).
double reflection_power(const Material& m, double frequency_hz, double cos_incidence);

/// One wall crossing: Fresnel transmittance at normal incidence plus the
/// configured per-wall penalty, in positive dB.
double transmission_loss_db(const Material& m, const SolverConfig& cfg);

struct Interaction {
    enum class Kind { kSpecular, kTransmission } kind = Kind::kSpecular;
    double cos_incidence = 1.0;
};

/// Link budget of a path: -FSPL(total_length) minus per-interaction losses.
double path_gain_db(double total_length_m, std::span<const Interaction> interactions,
                    const SolverConfig& cfg, const Material& m);

/// Enumerate propagation paths between two ENU points. Deterministic for a
/// fixed (scene, tx, rx, cfg, seed); the result is truncated to the
/// max_num_paths_per_src strongest paths.
std::vector<PathRecord> solve_paths(const scene::Scene& sc, const Vec3& tx, const Vec3& rx,
                                    const SolverConfig& cfg, std::uint64_t seed);

/// Incoherent power sum over paths for every station/UE pair. MISSING where
/// no path connects. Deterministic for fixed inputs regardless of worker
/// count (workers = 0 consults RFSIM_WORKERS, then hardware concurrency).
RssiMatrix simulate_rssi(const scene::Scene& sc, const std::vector<StationConfig>& stations,
                         const std::vector<UeConfig>& ues, const SolverConfig& cfg,
                         std::uint64_t seed, int workers = 0);

/// Combine path gains and antenna patterns into one received power figure.
double combine_rssi_dbm(std::span<const PathRecord> paths, double tx_power_dbm,
                        const antenna::AntennaConfig& tx_antenna,
                        const antenna::AntennaConfig& rx_antenna);

/// Stable per-link stream id: hash of the root seed and both device ids, so
/// link-level parallelism cannot reorder random draws.
std::uint64_t link_seed(std::uint64_t root_seed, const std::string& station_id,
                        const std::string& ue_id);

}  // namespace rfsim::prop

#endif  // RFSIM_PROPAGATION_HPP
