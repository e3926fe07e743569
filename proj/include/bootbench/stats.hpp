#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bootbench {

enum class Statistic { mean, stddev };

std::string_view to_string(Statistic s) noexcept;

struct BootstrapEstimate {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double confidence = 0.95;

    bool operator==(const BootstrapEstimate&) const = default;
};

struct BenchmarkStats {
    BootstrapEstimate mean;
    BootstrapEstimate std_dev;
    std::uint64_t sample_count = 0;
    std::uint64_t resample_count = 0;
    std::uint64_t rng_seed = 0;

    bool operator==(const BenchmarkStats&) const = default;
};

struct OutlierCounts {
    std::uint64_t low_severe = 0;
    std::uint64_t low_mild = 0;
    std::uint64_t high_mild = 0;
    std::uint64_t high_severe = 0;

    std::uint64_t total() const noexcept { return low_severe + low_mild + high_mild + high_severe; }

    bool operator==(const OutlierCounts&) const = default;
};

/// Arithmetic mean. Throws EmptyInput.
double point_mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator), Welford's recurrence.
/// Throws InsufficientData for fewer than two values.
double point_stddev(std::span<const double> xs);

double compute_statistic(Statistic s, std::span<const double> xs);

/// Quantile of sorted data, linear interpolation between order statistics:
/// h = (n - 1) p, result = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double quantile_sorted(std::span<const double> sorted, double p);

/// The raw bootstrap distribution: `resamples` values of the statistic, each
/// over |xs| indices drawn by PortableRng(seed).bounded(|xs|), resample by
/// resample, in draw order. Not sorted.
std::vector<double> bootstrap_distribution(std::span<const double> xs, Statistic s,
                                           std::uint64_t resamples, std::uint64_t seed);

/// Percentile bootstrap. point = statistic(xs); bounds are the quantiles of
/// the bootstrap distribution at (1 - c)/2 and 1 - (1 - c)/2.
/// Throws InsufficientData for fewer than two values.
BootstrapEstimate bootstrap(std::span<const double> xs, Statistic s, std::uint64_t resamples,
                            double confidence, std::uint64_t seed);

/// Mean and standard deviation estimates over one sample vector.
BenchmarkStats analyse(std::span<const double> xs, std::uint64_t resamples, double confidence,
                       std::uint64_t seed);

/// Tukey fences on linearly interpolated quartiles. Mild: beyond 1.5 IQR,
/// severe: beyond 3 IQR; comparisons are strict. Throws InsufficientData for
/// fewer than four values.
OutlierCounts classify_outliers(std::span<const double> xs);

} // namespace bootbench
