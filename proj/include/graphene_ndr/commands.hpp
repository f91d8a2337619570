#ifndef GRAPHENE_NDR_COMMANDS_HPP
#define GRAPHENE_NDR_COMMANDS_HPP

// Command implementations behind the graphene-ndr executable. Every command
// writes resolved_config.json next to its outputs and manifest.json last.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphene_ndr/units.hpp"

namespace graphene_ndr::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitRuntime = 3 };

/// Built-in figure parameters. Bump the version whenever a value changes.
inline constexpr int kFigureDefaultsVersion = 1;
inline constexpr std::string_view kFigureBaseConfig = R"({
  "alpha": 0.3,
  "D": 100,
  "V0": 200,
  "phi1": 15,
  "temperature": 300,
  "bias_sweep": {"start": 0, "stop": 600, "count": 201}
})";
inline constexpr double kFigureAlphas[] = {0.25, 0.3, 0.35};
inline constexpr double kFigureAngles[] = {10.0, 15.0, 20.0};

struct SweepSpec {
    enum class Variable { Bias, Energy, Angle };
    Variable variable = Variable::Bias;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

/// Parses `<V|E|phi1>:<start>:<stop>:<count>`. Throws Error(ConfigValidation).
SweepSpec parse_sweep(std::string_view text);

struct Options {
    std::string command;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    std::optional<std::string> sweep;
    std::optional<std::filesystem::path> iv_csv;
    double bias_mV = 0.0;
    bool svg = false;
    unsigned threads = 1;
};

struct RunManifest {
    std::string command;
    std::string resolved_config;  // JSON text
    std::vector<std::filesystem::path> outputs;
    double wall_time_s = 0.0;
    std::vector<std::string> warnings;

    std::string to_json() const;
};

/// Runs one command; returns the process exit code. Diagnostics go to `log`.
int run(const Options& options, std::ostream& log);

/// Figure family configs derived from `base` (alpha varied for figs 2-3,
/// phi1 varied for fig 4).
std::vector<DeviceConfig> alpha_family(const DeviceConfig& base);
std::vector<DeviceConfig> angle_family(const DeviceConfig& base);

}  // namespace graphene_ndr::cli

#endif
