#pragma once

#include "bootbench/registry.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bootbench {

inline constexpr std::string_view schema_version = "1";

/// Serialized output of one run; the unit the comparison engine joins.
struct RunDocument {
    std::string schema_version{bootbench::schema_version};
    EnvMeta env;
    MeasurementPlan plan;
    std::vector<BenchmarkRecord> records;

    bool operator==(const RunDocument&) const = default;
};

/// "44.27 us": two decimals in the largest of ns/us/ms/s that keeps
/// `reference_ns` >= 1.
struct DurationUnit {
    std::string_view suffix;
    double scale_ns;
};
DurationUnit unit_for(double reference_ns) noexcept;
std::string format_scaled(double ns, DurationUnit unit);
std::string format_duration(double ns);

std::string render_tabular(const RunDocument& doc);

std::string render_json(const RunDocument& doc);
/// Throws Error on malformed input or a schema mismatch.
RunDocument parse_json(std::string_view text);

std::string render_csv(const RunDocument& doc);

struct ComparisonCell {
    double baseline_mean = 0.0;
    double candidate_mean = 0.0;
    double baseline_std = 0.0;
    double candidate_std = 0.0;
    double speedup = 1.0;
    bool ci_overlap = true;

    bool operator==(const ComparisonCell&) const = default;
};

struct ComparisonRow {
    std::string name;
    double baseline_mean = 0.0;
    double baseline_std = 0.0;
    /// One entry per candidate; empty where the candidate lacks this benchmark.
    std::vector<std::optional<ComparisonCell>> cells;
};

struct ComparisonGap {
    std::string name;
    std::string label;
    /// true: present in the baseline, absent from candidate `label`.
    bool missing_in_candidate = true;
};

struct ComparisonMatrix {
    std::string baseline_label;
    std::vector<std::string> candidate_labels;
    std::vector<ComparisonRow> rows;
    std::vector<ComparisonGap> gaps;
};

/// Joins records by name. speedup = baseline mean / candidate mean;
/// ci_overlap is whether the two mean intervals intersect. Repeated labels get
/// a "#2", "#3", ... suffix. Throws NoCommonBenchmarks when no name is shared.
ComparisonMatrix compare(const RunDocument& baseline, std::span<const RunDocument> candidates);

/// Rows of "mean (std)" cells per configuration label, plus speedups and
/// interval-overlap flags; gaps are listed below the table.
std::string render_comparison(const ComparisonMatrix& m);

enum class PlotAxis { dtype, threads_per_team, n, config_label };
std::optional<PlotAxis> parse_plot_axis(std::string_view s) noexcept;

/// Tab-separated series for external plotting:
///   family <TAB> series <TAB> x <TAB> y_ns <TAB> yerr_ns
/// y is the mean, yerr the half-width of its interval. A series gathers the
/// records that agree on everything except the axis (teams excluded, as it
/// follows from n and threads_per_team).
std::string emit_plot_series(std::span<const RunDocument> docs, PlotAxis axis);

/// kernel | framework mean | naive mean | % deviation
std::string render_validation(std::span<const ValidationResult> results);

} // namespace bootbench
