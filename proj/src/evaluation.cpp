#include "rfsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "rfsim/dataset.hpp"

namespace rfsim::eval {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Average ranks with tie handling, 1-based.
std::vector<double> average_ranks(std::span<const double> v) {
    const size_t n = v.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::string spearman_status_name(SpearmanResult::Status s) {
    switch (s) {
        case SpearmanResult::Status::kOk: return "ok";
        case SpearmanResult::Status::kTooFewSamples: return "too-few-samples";
        case SpearmanResult::Status::kConstantInput: return "constant-input";
    }
    return "ok";
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("spearman: input lengths differ");
    }
    if (x.size() < 2) return SpearmanResult::undefined(SpearmanResult::Status::kTooFewSamples);

    auto constant = [](std::span<const double> v) {
        for (size_t i = 1; i < v.size(); ++i) {
            if (v[i] != v[0]) return false;
        }
        return true;
    };
    if (constant(x) || constant(y)) {
        return SpearmanResult::undefined(SpearmanResult::Status::kConstantInput);
    }

    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    return {pearson(rx, ry), SpearmanResult::Status::kOk};
}

Split make_split(const std::vector<std::string>& ue_ids, double train_ratio, std::uint64_t seed) {
    if (!(train_ratio >= 0.0 && train_ratio <= 1.0)) {
        throw std::invalid_argument("make_split: train ratio must be in [0, 1]");
    }
    std::vector<std::string> shuffled = ue_ids;
    // Fisher-Yates with an explicit generator, pinned so splits reproduce
    // across platforms and standard libraries.
    std::uint64_t state = seed;
    for (size_t i = shuffled.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(splitmix64(state) % i);
        std::swap(shuffled[i - 1], shuffled[j]);
    }
    const size_t n_train = static_cast<size_t>(std::llround(train_ratio * shuffled.size()));

    Split split;
    split.seed = seed;
    split.ratio = train_ratio;
    split.train_ids.assign(shuffled.begin(), shuffled.begin() + n_train);
    split.test_ids.assign(shuffled.begin() + n_train, shuffled.end());
    return split;
}

std::vector<std::array<double, 2>> knn_localize(std::span<const LabeledFingerprint> train,
                                                std::span<const std::vector<double>> test, int k) {
    if (train.empty()) throw std::invalid_argument("knn_localize: empty training set");
    if (k <= 0 || static_cast<size_t>(k) > train.size()) {
        throw std::invalid_argument("knn_localize: k must be in [1, |train|]");
    }
    for (const auto& t : train) {
        if (t.rssi.size() != train.front().rssi.size()) {
            throw std::invalid_argument("knn_localize: fingerprint dimensions differ");
        }
    }

    std::vector<std::array<double, 2>> out;
    out.reserve(test.size());
    std::vector<std::pair<double, int>> dist(train.size());

    for (const auto& query : test) {
        if (query.size() != train.front().rssi.size()) {
            throw std::invalid_argument("knn_localize: query dimension differs from train");
        }
        for (size_t i = 0; i < train.size(); ++i) {
            double d2 = 0.0;
            const auto& fp = train[i].rssi;
            for (size_t j = 0; j < fp.size(); ++j) {
                const double d = query[j] - fp[j];
                d2 += d * d;
            }
            dist[i] = {d2, static_cast<int>(i)};
        }
        std::sort(dist.begin(), dist.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return train[a.second].ue_id < train[b.second].ue_id;
        });
        double sx = 0.0, sy = 0.0;
        for (int i = 0; i < k; ++i) {
            sx += train[dist[i].second].x;
            sy += train[dist[i].second].y;
        }
        out.push_back({sx / k, sy / k});
    }
    return out;
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::kRR: return "RR";
        case Scenario::kRS: return "RS";
        case Scenario::kSS: return "SS";
        case Scenario::kSR: return "SR";
    }
    return "RR";
}

std::optional<double> FidelityReport::mean_spearman() const {
    double sum = 0.0;
    int count = 0;
    for (const auto& [id, r] : per_station_spearman) {
        if (r.rho.has_value()) {
            sum += *r.rho;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
}

nlohmann::json FidelityReport::to_json() const {
    nlohmann::json stations = nlohmann::json::object();
    for (const auto& id : station_ids) {
        const auto& r = per_station_spearman.at(id);
        nlohmann::json entry;
        entry["rho"] = r.rho.has_value() ? nlohmann::json(*r.rho) : nlohmann::json(nullptr);
        entry["status"] = spearman_status_name(r.status);
        stations[id] = entry;
    }
    nlohmann::json knn = nlohmann::json::object();
    for (const auto& [sc, err] : knn_mean_error_m) knn[scenario_name(sc)] = err;

    nlohmann::json j;
    j["station_ids"] = station_ids;
    j["per_station_spearman"] = stations;
    j["knn_mean_error_m"] = knn;
    j["n_stations"] = n_stations;
    j["n_ues"] = n_ues;
    j["k"] = k;
    j["split_seed"] = split_seed;
    j["split_ratio"] = split_ratio;
    return j;
}

FidelityReport FidelityReport::from_json(const nlohmann::json& j) {
    FidelityReport r;
    r.station_ids = j.at("station_ids").get<std::vector<std::string>>();
    for (const auto& id : r.station_ids) {
        const auto& entry = j.at("per_station_spearman").at(id);
        SpearmanResult sr;
        if (!entry.at("rho").is_null()) {
            sr.rho = entry.at("rho").get<double>();
        } else {
            const std::string status = entry.at("status").get<std::string>();
            sr.status = status == "too-few-samples" ? SpearmanResult::Status::kTooFewSamples
                                                    : SpearmanResult::Status::kConstantInput;
        }
        r.per_station_spearman.emplace(id, sr);
    }
    for (const Scenario sc : kAllScenarios) {
        r.knn_mean_error_m[sc] = j.at("knn_mean_error_m").at(scenario_name(sc)).get<double>();
    }
    r.n_stations = j.at("n_stations").get<int>();
    r.n_ues = j.at("n_ues").get<int>();
    r.k = j.at("k").get<int>();
    r.split_seed = j.at("split_seed").get<std::uint64_t>();
    r.split_ratio = j.at("split_ratio").get<double>();
    return r;
}

FidelityReport evaluate(const RssiMatrix& real, const RssiMatrix& sim,
                        const std::vector<UeConfig>& ues, const geo::GeoPoint& enu_origin,
                        const Split& split, const EvalOptions& options) {
    if (real.stations() != sim.stations() || real.ues() != sim.ues()) {
        throw std::invalid_argument("evaluate: matrices are not aligned (station/UE orderings differ)");
    }
    if (split.train_ids.empty() || split.test_ids.empty()) {
        throw std::invalid_argument("evaluate: split has an empty train or test side");
    }

    FidelityReport report;
    report.station_ids = real.stations();
    report.n_stations = real.n_stations();
    report.n_ues = real.n_ues();
    report.k = options.k;
    report.split_seed = split.seed;
    report.split_ratio = split.ratio;

    // Per-station rank correlation over all UEs, dropping pairs where either
    // side is missing.
    for (int s = 0; s < real.n_stations(); ++s) {
        std::vector<double> xs, ys;
        for (int u = 0; u < real.n_ues(); ++u) {
            if (real.has_value(s, u) && sim.has_value(s, u)) {
                xs.push_back(real.value(s, u));
                ys.push_back(sim.value(s, u));
            }
        }
        report.per_station_spearman.emplace(real.stations()[s], spearman(xs, ys));
    }

    // kNN localization in the four train->test source scenarios.
    std::unordered_map<std::string, const UeConfig*> ue_by_id;
    for (const auto& u : ues) ue_by_id.emplace(u.id, &u);
    auto enu_of = [&](const std::string& ue_id) {
        auto it = ue_by_id.find(ue_id);
        if (it == ue_by_id.end()) {
            throw std::invalid_argument("evaluate: UE '" + ue_id + "' has no registered position");
        }
        return ue_enu(*it->second, enu_origin);
    };

    auto build_train = [&](const RssiMatrix& m) {
        std::vector<LabeledFingerprint> train;
        train.reserve(split.train_ids.size());
        for (const auto& id : split.train_ids) {
            const Vec3 p = enu_of(id);
            train.push_back({id, data::fingerprint(m, id, options.floor_dbm), p.x, p.y});
        }
        return train;
    };
    auto build_test = [&](const RssiMatrix& m) {
        std::vector<std::vector<double>> test;
        test.reserve(split.test_ids.size());
        for (const auto& id : split.test_ids) {
            test.push_back(data::fingerprint(m, id, options.floor_dbm));
        }
        return test;
    };

    const std::vector<LabeledFingerprint> train_real = build_train(real);
    const std::vector<LabeledFingerprint> train_sim = build_train(sim);
    const std::vector<std::vector<double>> test_real = build_test(real);
    const std::vector<std::vector<double>> test_sim = build_test(sim);

    auto mean_error = [&](std::span<const LabeledFingerprint> train,
                          std::span<const std::vector<double>> test) {
        const auto predictions = knn_localize(train, test, options.k);
        double sum = 0.0;
        for (size_t i = 0; i < split.test_ids.size(); ++i) {
            const Vec3 truth = enu_of(split.test_ids[i]);
            const double dx = predictions[i][0] - truth.x;
            const double dy = predictions[i][1] - truth.y;
            sum += std::sqrt(dx * dx + dy * dy);
        }
        return sum / static_cast<double>(split.test_ids.size());
    };

    report.knn_mean_error_m[Scenario::kRR] = mean_error(train_real, test_real);
    report.knn_mean_error_m[Scenario::kRS] = mean_error(train_real, test_sim);
    report.knn_mean_error_m[Scenario::kSS] = mean_error(train_sim, test_sim);
    report.knn_mean_error_m[Scenario::kSR] = mean_error(train_sim, test_real);
    return report;
}

}  // namespace rfsim::eval
