#ifndef RFSIM_RSSI_MATRIX_HPP
#define RFSIM_RSSI_MATRIX_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rfsim {

enum class RssiSource { kReal, kSim };

/// Dense stations x UEs grid of RSSI in dBm with an explicit missing-value
/// marker (stored as NaN, serialized as an empty CSV field).
class RssiMatrix {
public:
    RssiMatrix() = default;
    RssiMatrix(std::vector<std::string> stations, std::vector<std::string> ues, RssiSource source);

    int n_stations() const { return static_cast<int>(stations_.size()); }
    int n_ues() const { return static_cast<int>(ues_.size()); }
    const std::vector<std::string>& stations() const { return stations_; }
    const std::vector<std::string>& ues() const { return ues_; }
    RssiSource source() const { return source_; }

    bool has_value(int station, int ue) const;
    double value(int station, int ue) const;  // NaN when missing
    void set(int station, int ue, double dbm);
    void set_missing(int station, int ue);

    int station_index(const std::string& id) const;  // -1 when absent
    int ue_index(const std::string& id) const;

    /// Drop the named station row. No-op when the station is absent.
    RssiMatrix without_station(const std::string& station_id) const;

    /// Reorder rows/columns to the given id lists. Throws when the id sets
    /// differ from this matrix's.
    RssiMatrix reordered(const std::vector<std::string>& stations,
                         const std::vector<std::string>& ues) const;

    /// Long-format CSV: header `station_id,ue_dbm...` see write_csv. Lines
    /// starting with '#' before the header carry provenance and are skipped
    /// on read.
    void write_csv(std::ostream& out, const std::string& provenance = {}) const;
    static RssiMatrix read_csv(std::istream& in, RssiSource source,
                               const std::string& source_name = "rssi csv");

private:
    std::vector<std::string> stations_;
    std::vector<std::string> ues_;
    std::vector<double> values_;  // station-major, NaN = missing
    RssiSource source_ = RssiSource::kSim;
};

}  // namespace rfsim

#endif  // RFSIM_RSSI_MATRIX_HPP
