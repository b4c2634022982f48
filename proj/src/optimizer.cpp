#include "rfsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rfsim/io_util.hpp"
#include "rfsim/json_io.hpp"

namespace rfsim::opt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::uint64_t fnv1a(std::uint64_t hash, const void* data, size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

double station_rho(const eval::FidelityReport& report, const std::string& station_id) {
    const auto it = report.per_station_spearman.find(station_id);
    if (it == report.per_station_spearman.end() || !it->second.rho.has_value()) return kNegInf;
    return *it->second.rho;
}

void validate_axis(const SweepAxis& axis) {
    if (axis.values.empty()) {
        throw std::invalid_argument("sweep axis '" + axis.name() + "' has no values");
    }
    for (size_t i = 0; i < axis.values.size(); ++i) {
        for (size_t j = i + 1; j < axis.values.size(); ++j) {
            if (axis.values[i] == axis.values[j]) {
                throw std::invalid_argument("sweep axis '" + axis.name() +
                                            "' has duplicate value " + axis.values[i].dump());
            }
        }
    }
    if (axis.scope == SweepScope::kPerStation && axis.target != SweepTarget::kBsAltitude &&
        axis.target != SweepTarget::kBsAzimuth && axis.target != SweepTarget::kBsPattern) {
        throw std::invalid_argument("sweep axis '" + axis.name() +
                                    "': PER_STATION scope requires a BS_* target");
    }
    if (axis.target == SweepTarget::kSolverField && axis.solver_field.empty()) {
        throw std::invalid_argument("SOLVER_FIELD axis needs a field name");
    }
}

}  // namespace

std::string sweep_target_name(SweepTarget t) {
    switch (t) {
        case SweepTarget::kBsAltitude: return "BS_ALTITUDE";
        case SweepTarget::kBsAzimuth: return "BS_AZIMUTH";
        case SweepTarget::kBsPattern: return "BS_PATTERN";
        case SweepTarget::kUePattern: return "UE_PATTERN";
        case SweepTarget::kUeAzimuth: return "UE_AZIMUTH";
        case SweepTarget::kFrequency: return "FREQUENCY";
        case SweepTarget::kSolverField: return "SOLVER_FIELD";
    }
    return "BS_ALTITUDE";
}

SweepTarget sweep_target_from_name(const std::string& name) {
    if (name == "BS_ALTITUDE") return SweepTarget::kBsAltitude;
    if (name == "BS_AZIMUTH") return SweepTarget::kBsAzimuth;
    if (name == "BS_PATTERN") return SweepTarget::kBsPattern;
    if (name == "UE_PATTERN") return SweepTarget::kUePattern;
    if (name == "UE_AZIMUTH") return SweepTarget::kUeAzimuth;
    if (name == "FREQUENCY") return SweepTarget::kFrequency;
    if (name == "SOLVER_FIELD") return SweepTarget::kSolverField;
    throw std::invalid_argument("unknown sweep target '" + name + "'");
}

std::string SweepAxis::name() const {
    if (target == SweepTarget::kSolverField) return "SOLVER_FIELD(" + solver_field + ")";
    return sweep_target_name(target);
}

std::string objective_name(ObjectiveKind k) {
    switch (k) {
        case ObjectiveKind::kMeanSpearman: return "MEAN_SPEARMAN";
        case ObjectiveKind::kPerStationSpearman: return "PER_STATION_SPEARMAN";
        case ObjectiveKind::kKnnSrError: return "KNN_SR_ERROR";
    }
    return "MEAN_SPEARMAN";
}

ObjectiveKind objective_from_name(const std::string& name) {
    if (name == "MEAN_SPEARMAN") return ObjectiveKind::kMeanSpearman;
    if (name == "PER_STATION_SPEARMAN") return ObjectiveKind::kPerStationSpearman;
    if (name == "KNN_SR_ERROR") return ObjectiveKind::kKnnSrError;
    throw std::invalid_argument("unknown objective '" + name + "'");
}

double objective_score(ObjectiveKind kind, const eval::FidelityReport& report) {
    switch (kind) {
        case ObjectiveKind::kMeanSpearman:
        case ObjectiveKind::kPerStationSpearman: {
            const auto mean = report.mean_spearman();
            return mean.has_value() ? *mean : kNegInf;
        }
        case ObjectiveKind::kKnnSrError:
            return -report.knn_mean_error_m.at(eval::Scenario::kSR);
    }
    return kNegInf;
}

std::uint64_t config_fingerprint(const SimulationInput& input, std::uint64_t seed) {
    nlohmann::json j;
    j["seed"] = seed;
    j["solver"] = solver_to_json(input.solver);
    nlohmann::json stations = nlohmann::json::array();
    for (const auto& s : input.stations) stations.push_back(station_to_json(s));
    nlohmann::json ues = nlohmann::json::array();
    for (const auto& u : input.ues) ues.push_back(ue_to_json(u));
    j["stations"] = std::move(stations);
    j["ues"] = std::move(ues);

    const std::string dump = j.dump();
    return fnv1a(0xcbf29ce484222325ULL, dump.data(), dump.size());
}

std::shared_ptr<const RssiMatrix> SimCache::get_or_run(const EvalContext& ctx,
                                                       const SimulationInput& input) {
    const std::uint64_t key = config_fingerprint(input, ctx.seed);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            ++hits_;
            return it->second;
        }
    }
    auto matrix = std::make_shared<RssiMatrix>(prop::simulate_rssi(
        *ctx.scene, input.stations, input.ues, input.solver, ctx.seed, ctx.workers));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, std::move(matrix));
    return it->second;
}

size_t SimCache::entries() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

size_t SimCache::hits() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return hits_;
}

void apply_axis_value(SimulationInput& input, const SweepAxis& axis, const nlohmann::json& value,
                      int station_index) {
    auto each_station = [&](auto&& fn) {
        if (station_index >= 0) {
            fn(input.stations.at(static_cast<size_t>(station_index)));
        } else {
            for (auto& s : input.stations) fn(s);
        }
    };
    auto number = [&]() {
        if (!value.is_number()) {
            throw std::invalid_argument("axis '" + axis.name() + "': expected a numeric value, got " +
                                        value.dump());
        }
        return value.get<double>();
    };
    auto pattern = [&]() {
        if (!value.is_string()) {
            throw std::invalid_argument("axis '" + axis.name() + "': expected a pattern name, got " +
                                        value.dump());
        }
        return antenna::pattern_from_name(value.get<std::string>());
    };

    switch (axis.target) {
        case SweepTarget::kBsAltitude:
            each_station([v = number()](StationConfig& s) { s.altitude_m = v; });
            break;
        case SweepTarget::kBsAzimuth:
            each_station([v = number()](StationConfig& s) { s.antenna.orientation.azimuth_deg = v; });
            break;
        case SweepTarget::kBsPattern:
            each_station([p = pattern()](StationConfig& s) { s.antenna.pattern = p; });
            break;
        case SweepTarget::kUePattern: {
            const auto p = pattern();
            for (auto& u : input.ues) u.antenna.pattern = p;
            break;
        }
        case SweepTarget::kUeAzimuth: {
            const double v = number();
            for (auto& u : input.ues) u.antenna.orientation.azimuth_deg = v;
            break;
        }
        case SweepTarget::kFrequency:
            input.solver.frequency_hz = number();
            break;
        case SweepTarget::kSolverField:
            set_solver_field(input.solver, axis.solver_field, value);
            break;
    }
}

eval::FidelityReport evaluate_input(const EvalContext& ctx, const SimulationInput& input,
                                    SimCache& cache) {
    const auto sim = cache.get_or_run(ctx, input);
    return eval::evaluate(*ctx.real, *sim, input.ues, ctx.scene->origin(), ctx.split, ctx.options);
}

std::vector<SweepRow> sweep(const SweepAxis& axis, const SimulationInput& base,
                            const EvalContext& ctx, SimCache& cache) {
    validate_axis(axis);
    std::vector<SweepRow> rows;
    rows.reserve(axis.values.size());
    for (const auto& value : axis.values) {
        SimulationInput candidate = base;
        apply_axis_value(candidate, axis, value);
        try {
            rows.push_back({value, evaluate_input(ctx, candidate, cache)});
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep axis '" + axis.name() + "' failed at value " +
                                     value.dump() + ": " + e.what());
        }
    }
    return rows;
}

OptimizeResult greedy_optimize(const std::vector<SweepAxis>& axes, ObjectiveKind objective,
                               const SimulationInput& base, const EvalContext& ctx,
                               SimCache& cache, int passes) {
    if (axes.empty()) throw std::invalid_argument("greedy_optimize: no axes given");
    if (passes < 1) throw std::invalid_argument("greedy_optimize: passes must be >= 1");
    for (const auto& axis : axes) {
        validate_axis(axis);
        if (objective == ObjectiveKind::kPerStationSpearman && axis.scope == SweepScope::kGlobal) {
            throw std::invalid_argument("objective PER_STATION_SPEARMAN requires PER_STATION axes ('" +
                                        axis.name() + "' is GLOBAL)");
        }
    }

    OptimizeResult result;
    result.config = base;
    result.initial_report = evaluate_input(ctx, base, cache);

    eval::FidelityReport current_report = result.initial_report;
    int step = 0;

    for (int pass = 0; pass < passes; ++pass) {
        for (const auto& axis : axes) {
            const auto rows = sweep(axis, result.config, ctx, cache);
            for (size_t i = 0; i < rows.size(); ++i) {
                result.trace.push_back({step++, axis.name(), rows[i].value,
                                        objective_score(objective, rows[i].report),
                                        rows[i].report.to_json()});
            }

            if (axis.scope == SweepScope::kGlobal) {
                size_t best = 0;
                for (size_t i = 1; i < rows.size(); ++i) {
                    if (objective_score(objective, rows[i].report) >
                        objective_score(objective, rows[best].report)) {
                        best = i;  // strict '>': first-listed value wins ties
                    }
                }
                if (objective_score(objective, rows[best].report) >=
                    objective_score(objective, current_report)) {
                    apply_axis_value(result.config, axis, rows[best].value);
                    current_report = rows[best].report;
                }
            } else {
                // Stations are simulated independently, so a station's
                // Spearman under a probe equals its value in the combined
                // configuration.
                bool changed = false;
                for (size_t s = 0; s < result.config.stations.size(); ++s) {
                    const std::string& id = result.config.stations[s].id;
                    size_t best = 0;
                    for (size_t i = 1; i < rows.size(); ++i) {
                        if (station_rho(rows[i].report, id) > station_rho(rows[best].report, id)) {
                            best = i;
                        }
                    }
                    if (station_rho(rows[best].report, id) >= station_rho(current_report, id)) {
                        apply_axis_value(result.config, axis, rows[best].value,
                                         static_cast<int>(s));
                        changed = true;
                    }
                }
                if (changed) {
                    current_report = evaluate_input(ctx, result.config, cache);
                }
            }
        }
    }

    result.final_report = current_report;
    return result;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace,
                     const std::string& provenance) {
    if (!provenance.empty()) out << "# " << provenance << "\n";
    out << "step,axis,value,objective,detail_json\n";
    for (const auto& e : trace) {
        out << e.step << ',' << io::csv_escape(e.axis) << ',' << io::csv_escape(e.value.dump())
            << ',' << e.objective << ',' << io::csv_escape(e.detail.dump()) << '\n';
    }
}

}  // namespace rfsim::opt
