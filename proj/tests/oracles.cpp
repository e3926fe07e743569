#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

namespace {

// Accept x when (x * n) mod 2^64 >= 2^64 mod n; the index is the high word.
std::uint64_t draw_index(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t reject_below = (~n + 1) % n;
    for (;;) {
        const unsigned __int128 product = static_cast<unsigned __int128>(gen()) * n;
        if (static_cast<std::uint64_t>(product) >= reject_below) {
            return static_cast<std::uint64_t>(product >> 64);
        }
    }
}

} // namespace

double quantile(std::vector<double> xs, double p) {
    std::sort(xs.begin(), xs.end());
    const double pos = p * static_cast<double>(xs.size() - 1);
    const double below = std::floor(pos);
    const auto i = static_cast<std::size_t>(below);
    if (i + 1 >= xs.size()) {
        return xs.back();
    }
    return xs[i] + (pos - below) * (xs[i + 1] - xs[i]);
}

Interval bootstrap_mean(const std::vector<double>& xs, std::uint64_t resamples, double confidence,
                        std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> means;
    for (std::uint64_t r = 0; r < resamples; ++r) {
        double total = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            total += xs[draw_index(gen, xs.size())];
        }
        means.push_back(total / static_cast<double>(xs.size()));
    }
    const double alpha = 1.0 - confidence;
    return {quantile(means, alpha / 2.0), quantile(means, 1.0 - alpha / 2.0)};
}

std::map<double, double> enumerate_resample_means(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < n; ++i) {
        tuples *= n;
    }
    std::map<double, double> dist;
    for (std::size_t code = 0; code < tuples; ++code) {
        std::size_t rest = code;
        long double total = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            total += xs[rest % n];
            rest /= n;
        }
        dist[static_cast<double>(total / n)] += 1.0 / static_cast<double>(tuples);
    }
    return dist;
}

double compensated_mean(const std::vector<double>& xs) {
    long double sum = 0.0L, comp = 0.0L;
    for (double v : xs) {
        const long double t = sum + v;
        if (std::fabs(sum) >= std::fabs(static_cast<long double>(v))) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return static_cast<double>((sum + comp) / xs.size());
}

double two_pass_stddev(const std::vector<double>& xs) {
    long double mean = 0.0L;
    for (double v : xs) mean += v;
    mean /= xs.size();
    long double ss = 0.0L;
    for (double v : xs) ss += (v - mean) * (v - mean);
    return static_cast<double>(std::sqrt(ss / (xs.size() - 1)));
}

} // namespace oracle
