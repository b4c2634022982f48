#ifndef RFSIM_DATASET_HPP
#define RFSIM_DATASET_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rfsim/devices.hpp"
#include "rfsim/rssi_matrix.hpp"

namespace rfsim::data {

/// Manual fix for a misreported base-station location: move it, or drop the
/// station (and its measurement row) entirely.
struct CorrectionOverride {
    enum class Action { kMove, kDrop };
    std::string station_id;
    Action action = Action::kMove;
    geo::GeoPoint corrected_position;
};

/// Result of ingesting a measurement CSV. Stations discovered in the file
/// are returned as id-only stubs; positions and antennas come from the
/// station registry via merge_station_registry.
struct MeasurementSet {
    RssiMatrix real;
    std::vector<UeConfig> ues;
    std::vector<StationConfig> stations;
};

/// Long-format drive-test CSV: header `ue_id,lat,lon,station_id,rssi_dbm`,
/// one row per reading. Column order is free; unknown columns and duplicate
/// (station, ue) pairs are rejected with a line number.
MeasurementSet load_measurements(const std::string& path);
MeasurementSet parse_measurements(std::istream& in, const std::string& source_name);

/// Station registry JSON: array of {id, lat, lon, altitude_m, pattern,
/// azimuth_deg, tilt_deg, roll_deg, tx_power_dbm}.
std::vector<StationConfig> load_stations(const std::string& path);
std::vector<StationConfig> parse_stations(const std::string& text, const std::string& source_name);

/// Overrides JSON: array of {station_id, action: "MOVE"|"DROP", lat, lon}.
std::vector<CorrectionOverride> load_overrides(const std::string& path);
std::vector<CorrectionOverride> parse_overrides(const std::string& text,
                                                const std::string& source_name);

/// Apply MOVE/DROP overrides. MOVE of an unknown station is an error; DROP
/// of an absent one is a no-op, which makes the operation idempotent.
std::vector<StationConfig> apply_corrections(const std::vector<StationConfig>& stations,
                                             const std::vector<CorrectionOverride>& overrides);

/// Drop the measurement rows of stations removed by DROP overrides.
RssiMatrix apply_corrections_to_matrix(const RssiMatrix& matrix,
                                       const std::vector<CorrectionOverride>& overrides);

/// Station-ordered RSSI vector for one UE; MISSING cells are replaced by the
/// floor value so fingerprints are always finite and complete.
std::vector<double> fingerprint(const RssiMatrix& matrix, const std::string& ue_id,
                                double floor_dbm = -150.0);

/// Fill measurement-file station stubs from the registry, in registry
/// order. Every measured station must exist in the registry; registry
/// stations without measurements are rejected too, so the matrix and the
/// simulation always cover the same set.
std::vector<StationConfig> merge_station_registry(const std::vector<StationConfig>& stubs,
                                                  const std::vector<StationConfig>& registry);

/// Apply global antenna/altitude defaults to UEs loaded from measurements.
void apply_ue_defaults(std::vector<UeConfig>& ues, const antenna::AntennaConfig& antenna,
                       double altitude_m);

}  // namespace rfsim::data

#endif  // RFSIM_DATASET_HPP
