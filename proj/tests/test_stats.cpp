#include "bootbench/error.hpp"
#include "bootbench/rng.hpp"
#include "bootbench/stats.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace bootbench;

namespace {

std::vector<double> scripted_values(std::size_t n, std::uint64_t seed, double lo = 900.0, double hi = 1100.0) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }
    return v;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("portable generator follows the standard mt19937_64 stream") {
    PortableRng rng(5489);
    std::uint64_t last = 0;
    for (int i = 0; i < 10000; ++i) {
        last = rng.next();
    }
    // Value required of std::mt19937_64 by [rand.predef].
    CHECK(last == 9981545732273789042ULL);
}

TEST_CASE("bounded draws stay in range and hit every value") {
    PortableRng rng(3);
    std::vector<int> hits(7);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.bounded(7);
        REQUIRE(v < 7);
        ++hits[v];
    }
    for (int h : hits) {
        CHECK(h > 800);
    }
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("point mean") {
    CHECK(point_mean(std::vector{2.0}) == 2.0);
    CHECK(point_mean(std::vector{1.0, 2.0, 3.0}) == 2.0);
    CHECK_THROWS_AS(point_mean(std::vector<double>{}), EmptyInput);
    const auto xs = scripted_values(1000, 17);
    const double want = oracle::compensated_mean(xs);
    CHECK(std::abs(point_mean(xs) - want) <= 1e-12 * std::abs(want));
}

TEST_CASE("point standard deviation") {
    CHECK(point_stddev(std::vector{5.0, 5.0, 5.0}) == 0.0);
    CHECK(point_stddev(std::vector{1.0, 3.0}) == doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK_THROWS_AS(point_stddev(std::vector{1.0}), InsufficientData);
    const auto xs = scripted_values(100, 23);
    const double want = oracle::two_pass_stddev(xs);
    CHECK(std::abs(point_stddev(xs) - want) <= 1e-10 * want);
}

TEST_CASE("constant data collapses the bootstrap") {
    const std::vector<double> sevens(4, 7.0);
    for (double conf : {0.5, 0.95, 0.999}) {
        const auto m = bootstrap(sevens, Statistic::mean, 500, conf, 9);
        CHECK(m.point == 7.0);
        CHECK(m.lower == 7.0);
        CHECK(m.upper == 7.0);
        CHECK(m.confidence == conf);
        const auto s = bootstrap(sevens, Statistic::stddev, 500, conf, 9);
        CHECK(s.point == 0.0);
        CHECK(s.lower == 0.0);
        CHECK(s.upper == 0.0);
    }
    // Values that do not sum exactly still give zero-width intervals.
    const std::vector<double> tenths(100, 0.1);
    const auto m = bootstrap(tenths, Statistic::mean, 200, 0.95, 1);
    CHECK(m.upper - m.lower == 0.0);
    const auto s = bootstrap(tenths, Statistic::stddev, 200, 0.95, 1);
    CHECK(s.point == 0.0);
    CHECK(s.lower == 0.0);
    CHECK(s.upper == 0.0);
}

TEST_CASE("bootstrap matches the replay oracle bit for bit") {
    const std::vector<double> xs{1.0, 2.0, 3.0};
    const auto got = bootstrap(xs, Statistic::mean, 20, 0.95, 42);
    const auto want = oracle::bootstrap_mean(xs, 20, 0.95, 42);
    CHECK(got.point == 2.0);
    CHECK(got.lower == want.lower);
    CHECK(got.upper == want.upper);

    const auto ys = scripted_values(57, 99);
    for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
        const auto g = bootstrap(ys, Statistic::mean, 333, 0.9, seed);
        const auto w = oracle::bootstrap_mean(ys, 333, 0.9, seed);
        CHECK(g.lower == w.lower);
        CHECK(g.upper == w.upper);
    }
}

TEST_CASE("two-point resample distribution matches enumeration") {
    const std::vector<double> xs{1.0, 2.0};
    const auto exact = oracle::enumerate_resample_means(xs);
    REQUIRE(exact.size() == 3);
    CHECK(exact.at(1.0) == 0.25);
    CHECK(exact.at(1.5) == 0.5);
    CHECK(exact.at(2.0) == 0.25);

    const auto dist = bootstrap_distribution(xs, Statistic::mean, 100000, 7);
    std::map<double, double> freq;
    for (double m : dist) {
        freq[m] += 1.0 / 100000.0;
    }
    REQUIRE(freq.size() == 3);
    for (const auto& [value, p] : exact) {
        CHECK(std::abs(freq[value] - p) <= 0.02);
    }
}

TEST_CASE("bootstrap rejects tiny inputs and bad parameters") {
    CHECK_THROWS_AS(bootstrap(std::vector{1.0}, Statistic::mean, 10, 0.95, 1), InsufficientData);
    CHECK_THROWS_AS(bootstrap(std::vector<double>{}, Statistic::stddev, 10, 0.95, 1), InsufficientData);
    CHECK_THROWS_AS(bootstrap(std::vector{1.0, 2.0}, Statistic::mean, 0, 0.95, 1), InvalidPlan);
    CHECK_THROWS_AS(bootstrap(std::vector{1.0, 2.0}, Statistic::mean, 10, 1.5, 1), InvalidPlan);
}

TEST_CASE("bootstrap properties on generated data") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + trial * 3;
        const auto xs = scripted_values(n, 1000 + trial, -5.0, 50.0);
        for (auto stat : {Statistic::mean, Statistic::stddev}) {
            const auto a = bootstrap(xs, stat, 400, 0.9, trial);
            const auto b = bootstrap(xs, stat, 400, 0.9, trial);
            CHECK(a == b);
            CHECK(a.lower <= a.upper);
            auto dist = bootstrap_distribution(xs, stat, 400, trial);
            const double med = oracle::quantile(dist, 0.5);
            CHECK(std::abs(a.point - med) <= (a.upper - a.lower) + 1e-9 * std::abs(a.point));
            if (stat == Statistic::stddev) {
                CHECK(a.lower >= 0.0);
            }
        }
        auto shuffled = xs;
        std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(trial));
        CHECK(point_mean(shuffled) == doctest::Approx(point_mean(xs)).epsilon(1e-14));
        CHECK(point_stddev(shuffled) == doctest::Approx(point_stddev(xs)).epsilon(1e-12));
    }
}

TEST_CASE("analyse bundles both estimates") {
    const auto xs = scripted_values(50, 5);
    const auto s = analyse(xs, 1000, 0.95, 77);
    CHECK(s.sample_count == 50);
    CHECK(s.resample_count == 1000);
    CHECK(s.rng_seed == 77);
    CHECK(s.mean == bootstrap(xs, Statistic::mean, 1000, 0.95, 77));
    CHECK(s.std_dev == bootstrap(xs, Statistic::stddev, 1000, 0.95, 77));
}

TEST_CASE("quantile interpolation") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile_sorted(v, 0.0) == 1.0);
    CHECK(quantile_sorted(v, 1.0) == 4.0);
    CHECK(quantile_sorted(v, 0.5) == 2.5);
    CHECK(quantile_sorted(v, 0.25) == 1.75);
}

TEST_CASE("outlier classification") {
    // Q1 = Q3 = 1, IQR = 0: 100 lies strictly beyond every fence.
    auto c = classify_outliers(std::vector{1.0, 1.0, 1.0, 1.0, 1.0, 100.0});
    CHECK(c.high_severe == 1);
    CHECK(c.total() == 1);

    CHECK(classify_outliers(std::vector{1.0, 2.0, 3.0, 4.0}).total() == 0);
    CHECK(classify_outliers(std::vector(10, 3.5)).total() == 0);

    // Hand-computed: sorted {-10,1,2,3,4,5,6,7,8,20}: Q1 = 2.25, Q3 = 6.75, IQR = 4.5,
    // mild fences [-4.5, 13.5], severe fences [-11.25, 20.25].
    c = classify_outliers(std::vector{-10.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 20.0});
    CHECK(c.low_mild == 1);
    CHECK(c.low_severe == 0);
    CHECK(c.high_mild == 1);
    CHECK(c.high_severe == 0);

    c = classify_outliers(std::vector{-20.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 30.0});
    // sorted {-20,1,..,8,30}: same quartiles, both extremes now severe.
    CHECK(c.low_severe == 1);
    CHECK(c.high_severe == 1);

    CHECK_THROWS_AS(classify_outliers(std::vector{1.0, 2.0, 3.0}), InsufficientData);
}

TEST_CASE("interval shrinks with more samples") {
    auto median_width = [](std::size_t n) {
        std::vector<double> widths;
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            const auto xs = scripted_values(n, 5000 + rep * 31 + n);
            const auto e = bootstrap(xs, Statistic::mean, 2000, 0.95, rep);
            widths.push_back(e.upper - e.lower);
        }
        return oracle::quantile(widths, 0.5);
    };
    CHECK(median_width(400) < 0.75 * median_width(100));
}

}
