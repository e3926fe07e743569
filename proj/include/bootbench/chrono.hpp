#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

namespace bootbench {

using Duration = std::chrono::nanoseconds;
using Timestamp = std::chrono::time_point<std::chrono::steady_clock, Duration>;

/// Monotonic time source. Injected everywhere a measurement reads time so
/// tests can substitute a scripted clock.
class Clock {
public:
    virtual ~Clock() = default;
    virtual Timestamp now() = 0;
};

/// The real monotonic clock (std::chrono::steady_clock).
class SteadyClock final : public Clock {
public:
    Timestamp now() override {
        return std::chrono::time_point_cast<Duration>(std::chrono::steady_clock::now());
    }
};

/// Deterministic clock for tests and reproducible runs.
///
/// Each now() returns the current virtual time and then advances it by the
/// next entry of `steps` (cycling). An empty step list means reads are free
/// and time only moves through advance(), which scripted benchmark bodies
/// call to declare their cost.
class ScriptedClock final : public Clock {
public:
    ScriptedClock() = default;
    explicit ScriptedClock(std::vector<Duration> steps) : steps_(std::move(steps)) {}

    Timestamp now() override;

    void advance(Duration d) { current_ += d; }
    std::uint64_t reads() const noexcept { return reads_; }

private:
    std::vector<Duration> steps_;
    std::size_t next_step_ = 0;
    Timestamp current_{};
    std::uint64_t reads_ = 0;
};

/// Measured properties of a clock. Immutable after construction.
class ClockModel {
public:
    ClockModel(double resolution_ns, double timer_cost_ns, std::uint64_t calibration_reps);

    double resolution_ns() const noexcept { return resolution_ns_; }
    double timer_cost_ns() const noexcept { return timer_cost_ns_; }
    std::uint64_t calibration_reps() const noexcept { return calibration_reps_; }

    bool operator==(const ClockModel&) const = default;

private:
    double resolution_ns_;
    double timer_cost_ns_;
    std::uint64_t calibration_reps_;
};

inline constexpr std::uint64_t min_calibration_reps = 100;

/// Calibrates `clock`.
///
/// resolution: median of the nonzero deltas between `calibration_reps + 1`
/// back-to-back reads. timer cost: median over several batches of the span of
/// a batch divided by the number of read intervals it contains.
///
/// Throws ClockUnusable when no delta is nonzero, InvalidPlan when
/// calibration_reps < 100.
ClockModel estimate_clock(Clock& clock, std::uint64_t calibration_reps = 10000);

} // namespace bootbench
