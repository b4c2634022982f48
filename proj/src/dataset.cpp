#include "rfsim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "rfsim/io_util.hpp"

namespace rfsim::data {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
    throw std::runtime_error(source + ": " + what);
}

double require_number(const json& obj, const char* key, const std::string& source,
                      const std::string& context) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        fail(source, context + ": missing or non-numeric field '" + key + "'");
    }
    return obj.at(key).get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& source,
                           const std::string& context) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        fail(source, context + ": missing or non-string field '" + key + "'");
    }
    return obj.at(key).get<std::string>();
}

}  // namespace

MeasurementSet parse_measurements(std::istream& in, const std::string& source_name) {
    static const std::set<std::string> kColumns = {"ue_id", "lat", "lon", "station_id",
                                                   "rssi_dbm"};

    std::string line;
    int line_no = 0;
    std::map<std::string, int> column;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = io::csv_split(line);
        for (size_t i = 0; i < fields.size(); ++i) {
            if (!kColumns.count(fields[i])) {
                fail(source_name, "line " + std::to_string(line_no) + ": unknown column '" +
                                      fields[i] + "'");
            }
            if (!column.emplace(fields[i], static_cast<int>(i)).second) {
                fail(source_name,
                     "line " + std::to_string(line_no) + ": repeated column '" + fields[i] + "'");
            }
        }
        break;
    }
    if (column.size() != kColumns.size()) {
        fail(source_name, "header must contain exactly ue_id,lat,lon,station_id,rssi_dbm");
    }

    struct Reading {
        int station, ue;
        double rssi;
        bool missing;
    };
    std::vector<Reading> readings;
    std::vector<std::string> station_ids, ue_ids;
    std::unordered_map<std::string, int> station_index, ue_index;
    std::vector<UeConfig> ues;
    std::unordered_set<long long> seen_pairs;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = io::csv_split(line);
        if (fields.size() != kColumns.size()) {
            fail(source_name, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(kColumns.size()) + " fields, got " +
                                  std::to_string(fields.size()));
        }
        const std::string& ue_id = fields[column["ue_id"]];
        const std::string& station_id = fields[column["station_id"]];
        if (ue_id.empty() || station_id.empty()) {
            fail(source_name, "line " + std::to_string(line_no) + ": empty ue_id or station_id");
        }
        const double lat = io::parse_double(fields[column["lat"]], source_name, line_no);
        const double lon = io::parse_double(fields[column["lon"]], source_name, line_no);

        geo::GeoPoint pos;
        try {
            pos = geo::GeoPoint(lat, lon, kDefaultUeAltitudeM);
        } catch (const std::invalid_argument& e) {
            fail(source_name, "line " + std::to_string(line_no) + ": " + e.what());
        }

        int ue;
        if (auto it = ue_index.find(ue_id); it != ue_index.end()) {
            ue = it->second;
            const auto& existing = ues[ue].position;
            if (std::fabs(existing.lat() - lat) > 1e-9 || std::fabs(existing.lon() - lon) > 1e-9) {
                fail(source_name, "line " + std::to_string(line_no) + ": UE '" + ue_id +
                                      "' reappears with different coordinates");
            }
        } else {
            ue = static_cast<int>(ue_ids.size());
            ue_index.emplace(ue_id, ue);
            ue_ids.push_back(ue_id);
            ues.push_back({ue_id, pos, {}});
        }

        int station;
        if (auto it = station_index.find(station_id); it != station_index.end()) {
            station = it->second;
        } else {
            station = static_cast<int>(station_ids.size());
            station_index.emplace(station_id, station);
            station_ids.push_back(station_id);
        }

        const long long key = static_cast<long long>(station) * (1LL << 32) + ue;
        if (!seen_pairs.insert(key).second) {
            fail(source_name, "line " + std::to_string(line_no) + ": duplicate reading for (" +
                                  station_id + ", " + ue_id + ")");
        }

        Reading r{station, ue, 0.0, fields[column["rssi_dbm"]].empty()};
        if (!r.missing) r.rssi = io::parse_double(fields[column["rssi_dbm"]], source_name, line_no);
        readings.push_back(r);
    }

    if (ue_ids.empty() || station_ids.empty()) {
        fail(source_name, "no readings found");
    }

    MeasurementSet out{RssiMatrix(station_ids, ue_ids, RssiSource::kReal), std::move(ues), {}};
    for (const auto& r : readings) {
        if (!r.missing) out.real.set(r.station, r.ue, r.rssi);
    }
    out.stations.reserve(station_ids.size());
    for (const auto& id : station_ids) out.stations.push_back({id, {}, 11.0, {}, 43.0});
    return out;
}

MeasurementSet load_measurements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open measurements file");
    return parse_measurements(in, path);
}

std::vector<StationConfig> parse_stations(const std::string& text,
                                          const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source_name, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) fail(source_name, "expected a JSON array of stations");

    std::vector<StationConfig> out;
    std::unordered_set<std::string> ids;
    for (const auto& item : doc) {
        StationConfig s;
        s.id = require_string(item, "id", source_name, "station");
        if (!ids.insert(s.id).second) fail(source_name, "duplicate station id '" + s.id + "'");
        const std::string ctx = "station '" + s.id + "'";
        s.position = geo::GeoPoint(require_number(item, "lat", source_name, ctx),
                                   require_number(item, "lon", source_name, ctx));
        s.altitude_m = require_number(item, "altitude_m", source_name, ctx);
        if (s.altitude_m <= 0.0) fail(source_name, ctx + ": altitude must be positive");
        s.antenna.pattern = antenna::pattern_from_name(
            item.value("pattern", std::string("iso")));
        s.antenna.orientation.azimuth_deg = item.value("azimuth_deg", 0.0);
        s.antenna.orientation.tilt_deg = item.value("tilt_deg", 0.0);
        s.antenna.orientation.roll_deg = item.value("roll_deg", 0.0);
        s.tx_power_dbm = item.value("tx_power_dbm", 43.0);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StationConfig> load_stations(const std::string& path) {
    return parse_stations(io::read_file(path), path);
}

std::vector<CorrectionOverride> parse_overrides(const std::string& text,
                                                const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source_name, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) fail(source_name, "expected a JSON array of overrides");

    std::vector<CorrectionOverride> out;
    for (const auto& item : doc) {
        CorrectionOverride o;
        o.station_id = require_string(item, "station_id", source_name, "override");
        const std::string action = require_string(item, "action", source_name,
                                                  "override '" + o.station_id + "'");
        if (action == "MOVE") {
            o.action = CorrectionOverride::Action::kMove;
            const std::string ctx = "override '" + o.station_id + "'";
            o.corrected_position = geo::GeoPoint(require_number(item, "lat", source_name, ctx),
                                                 require_number(item, "lon", source_name, ctx));
        } else if (action == "DROP") {
            o.action = CorrectionOverride::Action::kDrop;
        } else {
            fail(source_name, "override '" + o.station_id + "': unknown action '" + action + "'");
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<CorrectionOverride> load_overrides(const std::string& path) {
    return parse_overrides(io::read_file(path), path);
}

std::vector<StationConfig> apply_corrections(const std::vector<StationConfig>& stations,
                                             const std::vector<CorrectionOverride>& overrides) {
    std::vector<StationConfig> out = stations;
    for (const auto& o : overrides) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const StationConfig& s) { return s.id == o.station_id; });
        if (o.action == CorrectionOverride::Action::kMove) {
            if (it == out.end()) {
                throw std::runtime_error("override MOVE for unknown station '" + o.station_id +
                                         "'");
            }
            it->position = geo::GeoPoint(o.corrected_position.lat(), o.corrected_position.lon(),
                                         it->position.alt());
        } else if (it != out.end()) {
            out.erase(it);
        }
    }
    return out;
}

RssiMatrix apply_corrections_to_matrix(const RssiMatrix& matrix,
                                       const std::vector<CorrectionOverride>& overrides) {
    RssiMatrix out = matrix;
    for (const auto& o : overrides) {
        if (o.action == CorrectionOverride::Action::kDrop) {
            out = out.without_station(o.station_id);
        }
    }
    return out;
}

std::vector<double> fingerprint(const RssiMatrix& matrix, const std::string& ue_id,
                                double floor_dbm) {
    const int ue = matrix.ue_index(ue_id);
    if (ue < 0) throw std::runtime_error("fingerprint: unknown UE id '" + ue_id + "'");
    std::vector<double> out(static_cast<size_t>(matrix.n_stations()));
    for (int s = 0; s < matrix.n_stations(); ++s) {
        out[static_cast<size_t>(s)] = matrix.has_value(s, ue) ? matrix.value(s, ue) : floor_dbm;
    }
    return out;
}

std::vector<StationConfig> merge_station_registry(const std::vector<StationConfig>& stubs,
                                                  const std::vector<StationConfig>& registry) {
    std::unordered_set<std::string> measured;
    for (const auto& s : stubs) measured.insert(s.id);

    std::vector<StationConfig> out;
    std::unordered_set<std::string> known;
    for (const auto& s : registry) {
        known.insert(s.id);
        if (!measured.count(s.id)) {
            throw std::runtime_error("station '" + s.id + "' is in the registry but has no measurements");
        }
        out.push_back(s);
    }
    for (const auto& s : stubs) {
        if (!known.count(s.id)) {
            throw std::runtime_error("station '" + s.id + "' has measurements but is not in the registry");
        }
    }
    return out;
}

void apply_ue_defaults(std::vector<UeConfig>& ues, const antenna::AntennaConfig& antenna_cfg,
                       double altitude_m) {
    for (auto& u : ues) {
        u.antenna = antenna_cfg;
        u.position = geo::GeoPoint(u.position.lat(), u.position.lon(), altitude_m);
    }
}

}  // namespace rfsim::data
