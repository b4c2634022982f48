#ifndef RFSIM_EVALUATION_HPP
#define RFSIM_EVALUATION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfsim/devices.hpp"
#include "rfsim/rssi_matrix.hpp"

namespace rfsim::eval {

/// Spearman rank correlation value, or the reason it is undefined. An
/// undefined station is reported explicitly, never dropped.
struct SpearmanResult {
    enum class Status { kOk, kTooFewSamples, kConstantInput };
    std::optional<double> rho;
    Status status = Status::kOk;

    static SpearmanResult undefined(Status s) { return {std::nullopt, s}; }
};

std::string spearman_status_name(SpearmanResult::Status s);

/// Pearson correlation of average ranks; ties get average ranks. Inputs must
/// be same length and free of missing values.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

/// Deterministic train/test split of UE ids by seeded shuffle.
struct Split {
    std::vector<std::string> train_ids;
    std::vector<std::string> test_ids;
    std::uint64_t seed = 0;
    double ratio = 0.8;
};

Split make_split(const std::vector<std::string>& ue_ids, double train_ratio, std::uint64_t seed);

struct LabeledFingerprint {
    std::string ue_id;
    std::vector<double> rssi;
    double x = 0.0;  // ENU meters
    double y = 0.0;
};

/// kNN fingerprint localization: mean ENU (x, y) of the k nearest training
/// fingerprints by Euclidean distance; distance ties break by ascending
/// train ue_id.
std::vector<std::array<double, 2>> knn_localize(std::span<const LabeledFingerprint> train,
                                                std::span<const std::vector<double>> test, int k);

/// Train-source -> test-source fingerprint scenarios.
enum class Scenario { kRR, kRS, kSS, kSR };
std::string scenario_name(Scenario s);
inline constexpr std::array<Scenario, 4> kAllScenarios = {Scenario::kRR, Scenario::kRS,
                                                          Scenario::kSS, Scenario::kSR};

struct FidelityReport {
    std::vector<std::string> station_ids;
    std::map<std::string, SpearmanResult> per_station_spearman;
    std::map<Scenario, double> knn_mean_error_m;
    int n_stations = 0;
    int n_ues = 0;
    int k = 10;
    std::uint64_t split_seed = 0;
    double split_ratio = 0.8;

    /// Mean of the defined per-station correlations; nullopt when none is
    /// defined.
    std::optional<double> mean_spearman() const;

    nlohmann::json to_json() const;
    static FidelityReport from_json(const nlohmann::json& j);
};

struct EvalOptions {
    int k = 10;
    double floor_dbm = -150.0;
};

/// Score a simulated matrix against the real one: per-station Spearman over
/// all UEs, and kNN localization error for the four scenarios. Matrices must
/// be aligned (identical station and UE orderings).
FidelityReport evaluate(const RssiMatrix& real, const RssiMatrix& sim,
                        const std::vector<UeConfig>& ues, const geo::GeoPoint& enu_origin,
                        const Split& split, const EvalOptions& options = {});

}  // namespace rfsim::eval

#endif  // RFSIM_EVALUATION_HPP
