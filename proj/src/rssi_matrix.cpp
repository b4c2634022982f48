#include "rfsim/rssi_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rfsim/io_util.hpp"

namespace rfsim {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

RssiMatrix::RssiMatrix(std::vector<std::string> stations, std::vector<std::string> ues,
                       RssiSource source)
    : stations_(std::move(stations)),
      ues_(std::move(ues)),
      values_(stations_.size() * ues_.size(), kNan),
      source_(source) {}

bool RssiMatrix::has_value(int station, int ue) const {
    return !std::isnan(values_[static_cast<size_t>(station) * ues_.size() + ue]);
}

double RssiMatrix::value(int station, int ue) const {
    return values_[static_cast<size_t>(station) * ues_.size() + ue];
}

void RssiMatrix::set(int station, int ue, double dbm) {
    values_[static_cast<size_t>(station) * ues_.size() + ue] = dbm;
}

void RssiMatrix::set_missing(int station, int ue) {
    values_[static_cast<size_t>(station) * ues_.size() + ue] = kNan;
}

int RssiMatrix::station_index(const std::string& id) const {
    for (size_t i = 0; i < stations_.size(); ++i) {
        if (stations_[i] == id) return static_cast<int>(i);
    }
    return -1;
}

int RssiMatrix::ue_index(const std::string& id) const {
    for (size_t i = 0; i < ues_.size(); ++i) {
        if (ues_[i] == id) return static_cast<int>(i);
    }
    return -1;
}

RssiMatrix RssiMatrix::without_station(const std::string& station_id) const {
    const int drop = station_index(station_id);
    if (drop < 0) return *this;
    std::vector<std::string> kept;
    for (const auto& s : stations_) {
        if (s != station_id) kept.push_back(s);
    }
    RssiMatrix out(kept, ues_, source_);
    int row = 0;
    for (int s = 0; s < n_stations(); ++s) {
        if (s == drop) continue;
        for (int u = 0; u < n_ues(); ++u) out.values_[static_cast<size_t>(row) * ues_.size() + u] = value(s, u);
        ++row;
    }
    return out;
}

RssiMatrix RssiMatrix::reordered(const std::vector<std::string>& stations,
                                 const std::vector<std::string>& ues) const {
    if (stations.size() != stations_.size() || ues.size() != ues_.size()) {
        throw std::runtime_error("RssiMatrix::reordered: id sets differ in size");
    }
    RssiMatrix out(stations, ues, source_);
    std::vector<int> srow(stations.size()), ucol(ues.size());
    for (size_t i = 0; i < stations.size(); ++i) {
        const int idx = station_index(stations[i]);
        if (idx < 0) throw std::runtime_error("RssiMatrix::reordered: unknown station '" + stations[i] + "'");
        srow[i] = idx;
    }
    for (size_t i = 0; i < ues.size(); ++i) {
        const int idx = ue_index(ues[i]);
        if (idx < 0) throw std::runtime_error("RssiMatrix::reordered: unknown UE '" + ues[i] + "'");
        ucol[i] = idx;
    }
    for (size_t s = 0; s < stations.size(); ++s) {
        for (size_t u = 0; u < ues.size(); ++u) {
            out.values_[s * ues.size() + u] = value(srow[s], ucol[u]);
        }
    }
    return out;
}

void RssiMatrix::write_csv(std::ostream& out, const std::string& provenance) const {
    if (!provenance.empty()) out << "# " << provenance << "\n";
    out << "# source=" << (source_ == RssiSource::kReal ? "REAL" : "SIM") << "\n";
    out << "station_id,ue_id,rssi_dbm\n";
    char buf[40];
    for (int s = 0; s < n_stations(); ++s) {
        for (int u = 0; u < n_ues(); ++u) {
            out << io::csv_escape(stations_[s]) << ',' << io::csv_escape(ues_[u]) << ',';
            if (has_value(s, u)) {
                std::snprintf(buf, sizeof(buf), "%.17g", value(s, u));
                out << buf;
            }
            out << '\n';
        }
    }
}

RssiMatrix RssiMatrix::read_csv(std::istream& in, RssiSource source,
                                const std::string& source_name) {
    std::vector<std::string> stations, ues;
    std::unordered_map<std::string, int> station_idx, ue_idx;
    struct Cell {
        int s, u;
        double v;
        bool missing;
    };
    std::vector<Cell> cells;
    std::unordered_set<long long> seen;

    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = io::csv_split(line);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "station_id" || fields[1] != "ue_id" ||
                fields[2] != "rssi_dbm") {
                throw std::runtime_error(source_name + " line " + std::to_string(line_no) +
                                         ": expected header station_id,ue_id,rssi_dbm");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) {
            throw std::runtime_error(source_name + " line " + std::to_string(line_no) +
                                     ": expected 3 fields");
        }
        auto intern = [](std::vector<std::string>& list, std::unordered_map<std::string, int>& map,
                         const std::string& id) {
            auto it = map.find(id);
            if (it != map.end()) return it->second;
            const int idx = static_cast<int>(list.size());
            list.push_back(id);
            map.emplace(id, idx);
            return idx;
        };
        const int s = intern(stations, station_idx, fields[0]);
        const int u = intern(ues, ue_idx, fields[1]);
        const long long key = static_cast<long long>(s) * (1LL << 32) + u;
        if (!seen.insert(key).second) {
            throw std::runtime_error(source_name + " line " + std::to_string(line_no) +
                                     ": duplicate (station, ue) pair '" + fields[0] + "', '" +
                                     fields[1] + "'");
        }
        Cell c{s, u, 0.0, fields[2].empty()};
        if (!c.missing) c.v = io::parse_double(fields[2], source_name, line_no);
        cells.push_back(c);
    }
    if (!header_seen) {
        throw std::runtime_error(source_name + ": missing header row");
    }

    RssiMatrix m(stations, ues, source);
    for (const auto& c : cells) {
        if (!c.missing) m.set(c.s, c.u, c.v);
    }
    return m;
}

}  // namespace rfsim
