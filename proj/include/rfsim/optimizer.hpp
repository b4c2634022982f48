#ifndef RFSIM_OPTIMIZER_HPP
#define RFSIM_OPTIMIZER_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "rfsim/devices.hpp"
#include "rfsim/evaluation.hpp"
#include "rfsim/propagation.hpp"
#include "rfsim/scene.hpp"

namespace rfsim::opt {

enum class SweepTarget {
    kBsAltitude,
    kBsAzimuth,
    kBsPattern,
    kUePattern,
    kUeAzimuth,
    kFrequency,
    kSolverField,
};

enum class SweepScope { kGlobal, kPerStation };

std::string sweep_target_name(SweepTarget t);
SweepTarget sweep_target_from_name(const std::string& name);

/// One swept parameter and its candidate values. Values are JSON scalars:
/// numbers for altitudes/angles/frequencies, strings for patterns, and
/// numbers or booleans for solver fields.
struct SweepAxis {
    SweepTarget target = SweepTarget::kBsAltitude;
    SweepScope scope = SweepScope::kGlobal;
    std::vector<nlohmann::json> values;
    std::string solver_field;  // only for kSolverField

    std::string name() const;
};

enum class ObjectiveKind { kMeanSpearman, kPerStationSpearman, kKnnSrError };

std::string objective_name(ObjectiveKind k);
ObjectiveKind objective_from_name(const std::string& name);

/// Scalar score of a report under an objective; higher is better. The SR
/// error is negated so every objective maximizes.
double objective_score(ObjectiveKind kind, const eval::FidelityReport& report);

/// The simulated half of a run configuration: everything that determines
/// the SIM matrix besides the scene and the seed.
struct SimulationInput {
    std::vector<StationConfig> stations;
    std::vector<UeConfig> ues;
    prop::SolverConfig solver;
};

/// Stable content hash of (input, seed); the sweep/optimizer cache key.
std::uint64_t config_fingerprint(const SimulationInput& input, std::uint64_t seed);

/// Everything held fixed while sweeping: scene, real matrix, split, seed.
struct EvalContext {
    const scene::Scene* scene = nullptr;
    const RssiMatrix* real = nullptr;
    eval::Split split;
    eval::EvalOptions options;
    std::uint64_t seed = 0;
    int workers = 0;
};

/// Memoizes simulate_rssi results by config fingerprint. Safe for
/// concurrent use.
class SimCache {
public:
    std::shared_ptr<const RssiMatrix> get_or_run(const EvalContext& ctx,
                                                 const SimulationInput& input);
    size_t entries() const;
    size_t hits() const;

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const RssiMatrix>> cache_;
    size_t hits_ = 0;
};

/// Apply one axis value to the input. station_index < 0 applies to every
/// station (or globally for UE/solver targets).
void apply_axis_value(SimulationInput& input, const SweepAxis& axis, const nlohmann::json& value,
                      int station_index = -1);

/// Simulate + evaluate the input against the context's real matrix.
eval::FidelityReport evaluate_input(const EvalContext& ctx, const SimulationInput& input,
                                    SimCache& cache);

struct SweepRow {
    nlohmann::json value;
    eval::FidelityReport report;
};

/// One full simulate+evaluate per axis value, all other parameters held at
/// base. Rows keep the axis value order.
std::vector<SweepRow> sweep(const SweepAxis& axis, const SimulationInput& base,
                            const EvalContext& ctx, SimCache& cache);

struct TraceEntry {
    int step = 0;
    std::string axis;
    nlohmann::json value;
    double objective = 0.0;
    nlohmann::json detail;
};

struct OptimizeResult {
    SimulationInput config;
    eval::FidelityReport initial_report;
    eval::FidelityReport final_report;
    std::vector<TraceEntry> trace;
};

/// Single-pass coordinate ascent over the axes in order. Global axes keep
/// the best value by the objective; per-station axes pick each station's
/// best value by that station's own Spearman within one pass. Exact ties go
/// to the first-listed value. The result never scores below the base
/// configuration.
OptimizeResult greedy_optimize(const std::vector<SweepAxis>& axes, ObjectiveKind objective,
                               const SimulationInput& base, const EvalContext& ctx,
                               SimCache& cache, int passes = 1);

/// Trace CSV: step,axis,value,objective,detail_json.
void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace,
                     const std::string& provenance = {});

}  // namespace rfsim::opt

#endif  // RFSIM_OPTIMIZER_HPP
