#include "fixtures.hpp"

#include "bootbench/rng.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

using namespace bootbench;

namespace fixture {

namespace {

EnvMeta env(std::string label) {
    return {"bench-host", "Linux 6.1.0", "Example CPU @ 2.00GHz", "Release", "g++ 11.4.0",
            "2024-01-01T00:00:00Z", std::move(label)};
}

RunDocument with_label(std::string label, std::vector<BenchmarkRecord> recs) {
    RunDocument doc;
    doc.env = env(label);
    for (auto& r : recs) {
        r.env = doc.env;
    }
    doc.records = std::move(recs);
    return doc;
}

std::string random_string(PortableRng& rng) {
    static const std::string pieces[] = {"a", "Z", "0", "/", " ", "\"", "\\", "\n", "\t", ",",
                                         "\xc2\xb5", "\xe2\x82\xac", "=", "|", "#"};
    std::string s;
    const auto len = rng.bounded(12);
    for (std::uint64_t i = 0; i < len; ++i) {
        s += pieces[rng.bounded(std::size(pieces))];
    }
    return s;
}

double random_double(PortableRng& rng) {
    switch (rng.bounded(6)) {
    case 0: return rng.unit();
    case 1: return std::ldexp(rng.unit(), -1060);
    case 2: return std::ldexp(rng.unit() + 1.0, 900);
    case 3: return -rng.unit() * 1e6;
    case 4: return static_cast<double>(rng.bounded(1'000'000));
    default: return 1.0 / (1.0 + static_cast<double>(rng.bounded(97)));
    }
}

} // namespace

BenchmarkRecord record(std::string name, double mean, double mean_lo, double mean_hi, double sd, double sd_lo,
                       double sd_hi) {
    BenchmarkRecord r;
    r.family = name.substr(0, name.find('/'));
    r.name = std::move(name);
    r.config = {Dtype::f64, 65536, 256, 256, 2024};
    r.stats = {{mean, mean_lo, mean_hi, 0.95}, {sd, sd_lo, sd_hi, 0.95}, 100, 100000, 1};
    r.iterations_per_sample = 3;
    r.warmup_estimate_ns = mean;
    r.warmup_invocations = 2000;
    r.clock_resolution_ns = 30.0;
    r.timer_cost_ns = 39.0;
    return r;
}

RunDocument golden_document() {
    auto capture = record("atomic_capture/f64/n=65536/teams=256/tpb=256", 44270.0, 44100.0, 44450.0, 950.0,
                          880.0, 1020.0);
    capture.verification = {Verification::Status::pass, {}};
    auto gemm = record("gemm/f32/n=256/teams=256/tpb=256", 2'512'345.0, 2'498'000.0, 2'530'100.0, 41'000.0,
                       35'500.0, 47'250.0);
    gemm.config = {Dtype::f32, 256, 256, 256, 2024};
    gemm.verification = {Verification::Status::fail, "element 3: got 1, expected 2"};
    auto init = record("array_init/i32/n=4096/teams=32/tpb=128", 850.5, 842.25, 861.0, 12.0, 9.5, 15.75);
    init.config = {Dtype::i32, 4096, 32, 128, 2024};
    return with_label("default", {capture, gemm, init});
}

RunDocument rocm543() {
    return with_label("rocm543",
                      {record("atomic_capture/f64/n=65536/teams=256/tpb=256", 47270.0, 47000.0, 47600.0, 1200.0,
                              1000.0, 1400.0),
                       record("zaxpy/f64/n=65536/teams=256/tpb=256", 9000.0, 8900.0, 9100.0, 100.0, 80.0, 120.0),
                       record("array_init/f64/n=65536/teams=256/tpb=256", 5000.0, 4950.0, 5050.0, 40.0, 30.0,
                              50.0)});
}

RunDocument rocm600() {
    return with_label("rocm600",
                      {record("atomic_capture/f64/n=65536/teams=256/tpb=256", 34290.0, 34000.0, 34600.0, 800.0,
                              700.0, 900.0),
                       record("zaxpy/f64/n=65536/teams=256/tpb=256", 9050.0, 8950.0, 9150.0, 110.0, 90.0, 130.0),
                       record("atomic_update/f64/n=65536/teams=256/tpb=256", 70000.0, 69000.0, 71000.0, 900.0,
                              800.0, 1000.0)});
}

RunDocument random_document(std::uint64_t seed) {
    PortableRng rng(seed);
    RunDocument doc;
    doc.env = {random_string(rng), random_string(rng), random_string(rng), random_string(rng),
               random_string(rng), random_string(rng), "label" + random_string(rng)};
    doc.plan.samples = 1 + rng.bounded(1000);
    doc.plan.resamples = 1 + rng.bounded(1'000'000);
    doc.plan.confidence = 0.5 + 0.49 * rng.unit();
    doc.plan.warmup_time = Duration(static_cast<std::int64_t>(rng.bounded(1'000'000'000)));
    doc.plan.resolution_multiple = 1 + rng.bounded(1000);
    const auto n = rng.bounded(6);
    for (std::uint64_t i = 0; i < n; ++i) {
        BenchmarkRecord r;
        r.name = random_string(rng) + std::to_string(i);
        r.family = random_string(rng);
        r.config = {static_cast<Dtype>(rng.bounded(3)), rng.next(), static_cast<std::uint32_t>(rng.next()),
                    static_cast<std::uint32_t>(rng.next()), rng.next()};
        r.stats = {{random_double(rng), random_double(rng), random_double(rng), rng.unit()},
                   {random_double(rng), random_double(rng), random_double(rng), rng.unit()},
                   rng.bounded(10000),
                   rng.next(),
                   rng.next()};
        r.outliers = {rng.bounded(10), rng.bounded(10), rng.bounded(10), rng.bounded(10)};
        r.env = doc.env;
        r.verification = {static_cast<Verification::Status>(rng.bounded(3)), random_string(rng)};
        r.plan_used = doc.plan;
        r.iterations_per_sample = rng.next();
        r.warmup_estimate_ns = random_double(rng);
        r.warmup_invocations = rng.next();
        r.clock_resolution_ns = random_double(rng);
        r.timer_cost_ns = random_double(rng);
        const auto ns = rng.bounded(8);
        for (std::uint64_t j = 0; j < ns; ++j) {
            r.samples_ns.push_back(random_double(rng));
        }
        doc.records.push_back(std::move(r));
    }
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace fixture
