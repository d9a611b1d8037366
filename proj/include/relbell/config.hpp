#pragma once

#include "relbell/ensemble.hpp"
#include "relbell/stats.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relbell {

/// Configuration problem anchored to a line of the source file ("file:line: message").
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ScenarioSpec {
    enum class Type { round_trip, cylinder };
    Type type = Type::round_trip;
    double v_max = 0.6;
    double ramp = 0.0;
    double cruise = 10.0;
    double circumference = 6.0;
    double speed = 0.6;

    Scenario build() const;
};

/// Everything read from a run configuration file.
///
/// The file is plain INI with the sections [spin], [packets], [scenario],
/// [ensemble] and [output]. Unknown sections or keys are errors.
struct RunConfig {
    ExperimentConfig experiment;
    ScenarioSpec scenario;
    std::optional<ChshSettings> chsh;
    std::string output_dir;
    std::size_t bins = 64;

    nlohmann::ordered_json to_json() const;
};

/// Throws ConfigError (line-anchored) for syntax errors, unknown keys,
/// malformed values and out-of-range settings.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace relbell
