#include "bootbench/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace bootbench {

void MeasurementPlan::validate() const {
    if (samples < 2) {
        throw InvalidPlan("samples must be >= 2");
    }
    if (resamples < 1) {
        throw InvalidPlan("resamples must be >= 1");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidPlan("confidence must lie strictly between 0 and 1");
    }
    if (warmup_time < Duration::zero()) {
        throw InvalidPlan("warmup time must be >= 0");
    }
    if (resolution_multiple < 1) {
        throw InvalidPlan("resolution multiple must be >= 1");
    }
}

std::vector<double> SampleSet::per_iteration_ns() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(s.per_iteration_ns());
    }
    return out;
}

std::uint64_t estimate_iterations(double per_invocation_estimate_ns, const ClockModel& clock,
                                  const MeasurementPlan& plan) {
    const double per = std::max(per_invocation_estimate_ns, 1.0);
    const double target = static_cast<double>(plan.resolution_multiple) * clock.resolution_ns();
    auto k = static_cast<std::uint64_t>(std::max(1.0, std::ceil(target / per)));
    while (static_cast<double>(k) * per < target) {
        ++k;
    }
    while (k > 1 && static_cast<double>(k - 1) * per >= target) {
        --k;
    }
    return k;
}

namespace detail {

std::string describe_current_exception() {
    try {
        throw;
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown exception";
    }
}

} // namespace detail

} // namespace bootbench
