#pragma once

#include "relbell/config.hpp"
#include "relbell/stats.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace relbell {

inline constexpr const char* kVersion = "0.1.0";

/// 17 significant digits; parses back to the same double.
std::string format_double(double v);

inline constexpr const char* kTrialsHeader = "trial,i1,i2,x_r0,x_e0,x_rf,x_ef,o_r,o_e,fail_r,fail_e";

/// One row per trial; a missing outcome is an empty field.
void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);
void write_histogram_csv(std::ostream& out, const PlateHistogram& h);

nlohmann::ordered_json summary_json(const RunConfig& cfg, const EnsembleResult& result);
nlohmann::ordered_json manifest_json(const RunConfig& cfg, const ProperTimes& times, double wall_seconds);

struct SimulationFiles {
    std::filesystem::path trials, plate_rocket, plate_earth, summary, manifest;
};

/// Writes trials.csv, plate_rocket.csv, plate_earth.csv, summary.json and
/// manifest.json into dir (created if needed). Plates are skipped for a wing
/// without resolved trials. Throws std::runtime_error if a file cannot be written.
SimulationFiles write_simulation(const std::filesystem::path& dir, const RunConfig& cfg, const EnsembleResult& result,
                                 double wall_seconds);

}  // namespace relbell
