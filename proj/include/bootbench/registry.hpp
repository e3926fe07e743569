#pragma once

#include "bootbench/chrono.hpp"
#include "bootbench/env.hpp"
#include "bootbench/kernels.hpp"
#include "bootbench/sampling.hpp"
#include "bootbench/stats.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bootbench {

enum class BenchmarkMode { simple, advanced };

/// Returns nullopt when the output checks out, otherwise a failure message.
using Verifier = std::function<std::optional<std::string>()>;

/// A registered benchmark. Closures share state through captures, so copies
/// refer to the same buffers.
///
/// simple: `body` is timed. advanced: per sample `setup` runs, then only the
/// invocations of `body` are timed, then `teardown` runs. `prepare` and
/// `release` bracket the whole measurement (allocation lives there), and
/// `pre_verify` runs just before the final untimed invocation that the
/// verifier inspects.
struct BenchmarkDef {
    std::string name;
    std::string family;
    KernelConfig config;
    BenchmarkMode mode = BenchmarkMode::simple;
    std::function<double()> body;
    std::function<void()> setup;
    std::function<void()> teardown;
    std::function<void()> prepare;
    std::function<void()> release;
    std::function<void()> pre_verify;
    Verifier verifier;
};

/// `family/dtype/n=<n>/teams=<t>/tpb=<k>`; comparisons join on it.
std::string canonical_name(std::string_view family, const KernelConfig& cfg);

struct Verification {
    enum class Status { pass, fail, skipped };

    Status status = Status::skipped;
    std::string message;

    bool operator==(const Verification&) const = default;
};

std::string_view to_string(Verification::Status s) noexcept;
std::optional<Verification::Status> parse_verification_status(std::string_view s) noexcept;

struct BenchmarkRecord {
    std::string name;
    std::string family;
    KernelConfig config;
    BenchmarkStats stats;
    OutlierCounts outliers;
    EnvMeta env;
    Verification verification;
    MeasurementPlan plan_used;
    std::uint64_t iterations_per_sample = 1;
    double warmup_estimate_ns = 0.0;
    std::uint64_t warmup_invocations = 0;
    double clock_resolution_ns = 0.0;
    double timer_cost_ns = 0.0;
    std::vector<double> samples_ns;

    bool operator==(const BenchmarkRecord&) const = default;
};

class Registry {
public:
    /// An empty def.name is replaced by canonical_name(family, config).
    /// Throws DuplicateName.
    void register_benchmark(BenchmarkDef def);

    const std::vector<BenchmarkDef>& list() const noexcept { return defs_; }

    /// Benchmarks whose name matches any shell glob in `patterns`, in
    /// registration order, each at most once. No patterns selects everything.
    std::vector<BenchmarkDef> select(std::span<const std::string> patterns) const;

    const BenchmarkDef* find(std::string_view name) const noexcept;

private:
    std::vector<BenchmarkDef> defs_;
};

bool glob_match(std::string_view pattern, std::string_view name);

/// Reads newline-separated globs; blank lines and lines starting with '#'
/// are skipped.
std::vector<std::string> parse_selection(std::string_view text);

struct RunSettings {
    MeasurementPlan plan;
    std::uint64_t seed = 1;
    EnvMeta env;
};

/// Measures one benchmark: warmup, iteration estimate, samples, bootstrap,
/// outliers, then the verifier on one final untimed invocation.
BenchmarkRecord run_one(const BenchmarkDef& def, const RunSettings& settings, Clock& clock,
                        const ClockModel& model);

/// run_one over `defs` in order. Verifier failures are recorded and the run
/// continues; body failures propagate.
std::vector<BenchmarkRecord> run(std::span<const BenchmarkDef> defs, const RunSettings& settings,
                                 Clock& clock, const ClockModel& model);

struct ValidationResult {
    std::string name;
    double framework_mean_ns = 0.0;
    double naive_mean_ns = 0.0;
    double percent_deviation = 0.0;
    BenchmarkRecord record;
};

/// 100 |framework - naive| / naive.
double percent_deviation(double framework, double naive);

/// Framework mean from one run_one() against a naive mean: two raw clock reads
/// around `reps` back-to-back invocations, divided by reps.
ValidationResult validate_against_naive(const BenchmarkDef& def, const RunSettings& settings,
                                        Clock& clock, const ClockModel& model, std::uint64_t reps = 100);

} // namespace bootbench
