#pragma once

#include "bootbench/report.hpp"
#include "bootbench/sampling.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bootbench {

enum class Command { run, validate, compare, list };
enum class ReporterKind { tabular, json, csv };

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_verification_failed = 2;
inline constexpr int exit_usage = 64;

struct CliConfig {
    Command command = Command::run;
    MeasurementPlan plan;
    std::optional<std::string> input_file;
    std::vector<std::string> patterns;
    ReporterKind reporter = ReporterKind::tabular;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::string config_label = "default";
    double max_deviation_pct = 1.0;
    std::vector<std::string> documents;
    std::optional<PlotAxis> plot_axis;
    bool help = false;
    std::string help_text;
};

/// Parses arguments (without the program name). Absent flags keep their
/// defaults. Throws UsageError for unknown flags, unparsable or out-of-range
/// values, and compare with fewer than two documents.
CliConfig parse_args(std::span<const std::string> args);

struct CliRuntime {
    /// Measure against a scripted clock: kernels still execute, but time
    /// advances by a fixed cost per invocation, so reports are reproducible.
    bool scripted = false;
    /// Fallback for --seed (the BOOTBENCH_SEED environment variable).
    std::optional<std::string> env_seed;
};

int execute(const CliConfig& config, const CliRuntime& runtime, std::ostream& out, std::ostream& err);

/// parse_args + execute with process streams and environment.
int cli_main(int argc, const char* const* argv, bool scripted);

} // namespace bootbench
