#include "bootbench/chrono.hpp"

#include "bootbench/error.hpp"

#include <algorithm>
#include <string>

namespace bootbench {

namespace {

constexpr int cost_batches = 9;

double median_of(std::vector<double> values) {
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return lower + (upper - lower) / 2.0;
}

} // namespace

Timestamp ScriptedClock::now() {
    ++reads_;
    const Timestamp t = current_;
    if (!steps_.empty()) {
        current_ += steps_[next_step_];
        next_step_ = (next_step_ + 1) % steps_.size();
    }
    return t;
}

ClockModel::ClockModel(double resolution_ns, double timer_cost_ns, std::uint64_t calibration_reps)
    : resolution_ns_(resolution_ns), timer_cost_ns_(timer_cost_ns), calibration_reps_(calibration_reps) {
    if (!(resolution_ns > 0.0)) {
        throw ClockUnusable("clock resolution must be positive, got " + std::to_string(resolution_ns));
    }
    if (!(timer_cost_ns >= 0.0) || timer_cost_ns > resolution_ns * 1000.0) {
        throw ClockUnusable("timer cost " + std::to_string(timer_cost_ns) +
                            " ns is outside [0, 1000 x resolution]");
    }
}

ClockModel estimate_clock(Clock& clock, std::uint64_t calibration_reps) {
    if (calibration_reps < min_calibration_reps) {
        throw InvalidPlan("calibration_reps must be >= " + std::to_string(min_calibration_reps));
    }

    std::vector<Timestamp> reads(calibration_reps + 1);
    for (auto& t : reads) {
        t = clock.now();
    }
    std::vector<double> nonzero;
    nonzero.reserve(calibration_reps);
    for (std::size_t i = 1; i < reads.size(); ++i) {
        const auto delta = (reads[i] - reads[i - 1]).count();
        if (delta > 0) {
            nonzero.push_back(static_cast<double>(delta));
        }
    }
    if (nonzero.empty()) {
        throw ClockUnusable("clock did not advance over " + std::to_string(calibration_reps) +
                            " consecutive reads");
    }
    const double resolution = median_of(std::move(nonzero));

    // t0, `calibration_reps` reads, t1: the span covers calibration_reps + 1 intervals.
    std::vector<double> costs;
    costs.reserve(cost_batches);
    for (int batch = 0; batch < cost_batches; ++batch) {
        const Timestamp start = clock.now();
        for (std::uint64_t i = 0; i < calibration_reps; ++i) {
            [[maybe_unused]] volatile auto ignored = clock.now().time_since_epoch().count();
        }
        const Timestamp stop = clock.now();
        costs.push_back(static_cast<double>((stop - start).count()) /
                        static_cast<double>(calibration_reps + 1));
    }
    return ClockModel(resolution, median_of(std::move(costs)), calibration_reps);
}

} // namespace bootbench
