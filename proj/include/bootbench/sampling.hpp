#pragma once

#include "bootbench/chrono.hpp"
#include "bootbench/error.hpp"
#include "bootbench/sink.hpp"

#include <cstdint>
#include <exception>
#include <string>
#include <vector>

namespace bootbench {

struct MeasurementPlan {
    std::uint64_t samples = 100;
    std::uint64_t resamples = 100000;
    double confidence = 0.95;
    Duration warmup_time = std::chrono::milliseconds(100);
    std::uint64_t resolution_multiple = 100;

    /// Throws InvalidPlan if any field is out of range.
    void validate() const;

    bool operator==(const MeasurementPlan&) const = default;
};

/// One timed batch of `iterations` consecutive invocations.
struct Sample {
    std::int64_t total_elapsed_ns = 0;
    std::uint64_t iterations = 1;

    double per_iteration_ns() const noexcept {
        return static_cast<double>(total_elapsed_ns) / static_cast<double>(iterations);
    }

    bool operator==(const Sample&) const = default;
};

struct SampleSet {
    std::vector<Sample> samples;
    std::uint64_t iterations_per_sample = 1;
    ClockModel clock;

    std::vector<double> per_iteration_ns() const;

    bool operator==(const SampleSet&) const = default;
};

struct WarmupResult {
    double per_invocation_ns = 0.0;
    std::uint64_t invocations = 0;
};

/// Smallest k >= 1 with k * max(estimate, 1 ns) >= resolution_multiple * resolution.
std::uint64_t estimate_iterations(double per_invocation_estimate_ns, const ClockModel& clock,
                                  const MeasurementPlan& plan);

namespace detail {

std::string describe_current_exception();

template <class Fn>
inline void guarded(Fn&& fn, FailurePhase phase, std::size_t sample_index) {
    try {
        fn();
    } catch (const BodyFailure&) {
        throw;
    } catch (...) {
        throw BodyFailure(phase, sample_index, describe_current_exception());
    }
}

} // namespace detail

/// Runs `body` until at least plan.warmup_time has elapsed (at least once) and
/// returns the mean per-invocation duration seen while doing so.
template <class Body>
WarmupResult warmup(Body&& body, const MeasurementPlan& plan, Clock& clock, Sink& sink) {
    const Timestamp start = clock.now();
    std::uint64_t n = 0;
    Duration elapsed{};
    do {
        invoke_into(body, sink);
        ++n;
        elapsed = clock.now() - start;
    } while (elapsed < plan.warmup_time);
    return {static_cast<double>(elapsed.count()) / static_cast<double>(n), n};
}

/// Warmup for the setup/timed/teardown form. Stops on total wall time but the
/// estimate covers only the timed region.
template <class Setup, class Body, class Teardown>
WarmupResult warmup_advanced(Setup&& setup, Body&& timed_body, Teardown&& teardown,
                             const MeasurementPlan& plan, Clock& clock, Sink& sink) {
    const Timestamp start = clock.now();
    std::uint64_t n = 0;
    Duration timed{};
    Timestamp stop{};
    do {
        setup();
        const Timestamp t0 = clock.now();
        invoke_into(timed_body, sink);
        stop = clock.now();
        teardown();
        timed += stop - t0;
        ++n;
    } while (stop - start < plan.warmup_time);
    return {static_cast<double>(timed.count()) / static_cast<double>(n), n};
}

/// Times plan.samples batches of k invocations each. Failures are rethrown as
/// BodyFailure carrying the sample index.
template <class Body>
SampleSet collect_samples(Body&& body, std::uint64_t k, const MeasurementPlan& plan,
                          const ClockModel& model, Clock& clock, Sink& sink) {
    if (k == 0) {
        throw InvalidPlan("iteration count must be >= 1");
    }
    SampleSet set{{}, k, model};
    set.samples.reserve(plan.samples);
    for (std::size_t s = 0; s < plan.samples; ++s) {
        Timestamp t0{};
        Timestamp t1{};
        detail::guarded(
            [&] {
                t0 = clock.now();
                for (std::uint64_t i = 0; i < k; ++i) {
                    invoke_into(body, sink);
                }
                t1 = clock.now();
            },
            FailurePhase::body, s);
        set.samples.push_back({(t1 - t0).count(), k});
    }
    return set;
}

/// Chronometer form: per sample, setup() runs, then only the k invocations of
/// timed_body sit between the two clock reads, then teardown() runs.
template <class Setup, class Body, class Teardown>
SampleSet measure_advanced(Setup&& setup, Body&& timed_body, Teardown&& teardown, std::uint64_t k,
                           const MeasurementPlan& plan, const ClockModel& model, Clock& clock,
                           Sink& sink) {
    if (k == 0) {
        throw InvalidPlan("iteration count must be >= 1");
    }
    SampleSet set{{}, k, model};
    set.samples.reserve(plan.samples);
    for (std::size_t s = 0; s < plan.samples; ++s) {
        detail::guarded(setup, FailurePhase::setup, s);
        Timestamp t0{};
        Timestamp t1{};
        detail::guarded(
            [&] {
                t0 = clock.now();
                for (std::uint64_t i = 0; i < k; ++i) {
                    invoke_into(timed_body, sink);
                }
                t1 = clock.now();
            },
            FailurePhase::body, s);
        detail::guarded(teardown, FailurePhase::teardown, s);
        set.samples.push_back({(t1 - t0).count(), k});
    }
    return set;
}

} // namespace bootbench
