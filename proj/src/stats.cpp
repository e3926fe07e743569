#include "bootbench/stats.hpp"

#include "bootbench/error.hpp"
#include "bootbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bootbench {

std::string_view to_string(Statistic s) noexcept {
    return s == Statistic::mean ? "mean" : "stddev";
}

double point_mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw EmptyInput("mean of an empty sequence");
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}

double point_stddev(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw InsufficientData("standard deviation needs at least 2 values, got " +
                               std::to_string(xs.size()));
    }
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (double x : xs) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    return std::sqrt(std::max(m2, 0.0) / static_cast<double>(n - 1));
}

double compute_statistic(Statistic s, std::span<const double> xs) {
    return s == Statistic::mean ? point_mean(xs) : point_stddev(xs);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw EmptyInput("quantile of an empty sequence");
    }
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> bootstrap_distribution(std::span<const double> xs, Statistic s,
                                           std::uint64_t resamples, std::uint64_t seed) {
    if (xs.size() < 2) {
        throw InsufficientData("bootstrap needs at least 2 values, got " + std::to_string(xs.size()));
    }
    PortableRng rng(seed);
    const std::uint64_t n = xs.size();
    std::vector<double> resample(n);
    std::vector<double> out;
    out.reserve(resamples);
    for (std::uint64_t r = 0; r < resamples; ++r) {
        for (auto& v : resample) {
            v = xs[rng.bounded(n)];
        }
        out.push_back(compute_statistic(s, resample));
    }
    return out;
}

BootstrapEstimate bootstrap(std::span<const double> xs, Statistic s, std::uint64_t resamples,
                            double confidence, std::uint64_t seed) {
    if (resamples < 1) {
        throw InvalidPlan("resamples must be >= 1");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidPlan("confidence must lie strictly between 0 and 1");
    }
    auto dist = bootstrap_distribution(xs, s, resamples, seed);
    std::sort(dist.begin(), dist.end());
    const double tail = (1.0 - confidence) / 2.0;
    return {compute_statistic(s, xs), quantile_sorted(dist, tail), quantile_sorted(dist, 1.0 - tail),
            confidence};
}

BenchmarkStats analyse(std::span<const double> xs, std::uint64_t resamples, double confidence,
                       std::uint64_t seed) {
    return {bootstrap(xs, Statistic::mean, resamples, confidence, seed),
            bootstrap(xs, Statistic::stddev, resamples, confidence, seed),
            xs.size(),
            resamples,
            seed};
}

OutlierCounts classify_outliers(std::span<const double> xs) {
    if (xs.size() < 4) {
        throw InsufficientData("outlier classification needs at least 4 values, got " +
                               std::to_string(xs.size()));
    }
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile_sorted(sorted, 0.25);
    const double q3 = quantile_sorted(sorted, 0.75);
    const double iqr = q3 - q1;
    const double low_mild = q1 - 1.5 * iqr;
    const double low_severe = q1 - 3.0 * iqr;
    const double high_mild = q3 + 1.5 * iqr;
    const double high_severe = q3 + 3.0 * iqr;

    OutlierCounts counts;
    for (double x : sorted) {
        if (x < low_severe) {
            ++counts.low_severe;
        } else if (x < low_mild) {
            ++counts.low_mild;
        } else if (x > high_severe) {
            ++counts.high_severe;
        } else if (x > high_mild) {
            ++counts.high_mild;
        }
    }
    return counts;
}

} // namespace bootbench
