#include "bootbench/registry.hpp"

#include "bootbench/error.hpp"

#include <fnmatch.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bootbench {

namespace {

// Calls def.release on scope exit, whatever happened in between.
class ReleaseGuard {
public:
    explicit ReleaseGuard(const BenchmarkDef& def) : def_(def) {}
    ~ReleaseGuard() {
        if (def_.release) {
            try {
                def_.release();
            } catch (...) {
            }
        }
    }
    ReleaseGuard(const ReleaseGuard&) = delete;
    ReleaseGuard& operator=(const ReleaseGuard&) = delete;

private:
    const BenchmarkDef& def_;
};

void noop() {}

const std::function<void()>& or_noop(const std::function<void()>& fn) {
    static const std::function<void()> empty = noop;
    return fn ? fn : empty;
}

} // namespace

std::string canonical_name(std::string_view family, const KernelConfig& cfg) {
    std::ostringstream out;
    out << family << '/' << to_string(cfg.dtype) << "/n=" << cfg.n << "/teams=" << cfg.teams
        << "/tpb=" << cfg.threads_per_team;
    return out.str();
}

std::string_view to_string(Verification::Status s) noexcept {
    switch (s) {
    case Verification::Status::pass: return "pass";
    case Verification::Status::fail: return "fail";
    case Verification::Status::skipped: return "skipped";
    }
    return "?";
}

std::optional<Verification::Status> parse_verification_status(std::string_view s) noexcept {
    if (s == "pass") return Verification::Status::pass;
    if (s == "fail") return Verification::Status::fail;
    if (s == "skipped") return Verification::Status::skipped;
    return std::nullopt;
}

void Registry::register_benchmark(BenchmarkDef def) {
    if (def.name.empty()) {
        def.name = canonical_name(def.family, def.config);
    }
    if (find(def.name) != nullptr) {
        throw DuplicateName("benchmark already registered: " + def.name);
    }
    if (!def.body) {
        throw std::invalid_argument("benchmark " + def.name + " has no body");
    }
    defs_.push_back(std::move(def));
}

std::vector<BenchmarkDef> Registry::select(std::span<const std::string> patterns) const {
    if (patterns.empty()) {
        return defs_;
    }
    std::vector<BenchmarkDef> out;
    for (const auto& def : defs_) {
        for (const auto& p : patterns) {
            if (glob_match(p, def.name)) {
                out.push_back(def);
                break;
            }
        }
    }
    return out;
}

const BenchmarkDef* Registry::find(std::string_view name) const noexcept {
    for (const auto& def : defs_) {
        if (def.name == name) {
            return &def;
        }
    }
    return nullptr;
}

bool glob_match(std::string_view pattern, std::string_view name) {
    const std::string p(pattern);
    const std::string n(name);
    return fnmatch(p.c_str(), n.c_str(), 0) == 0;
}

std::vector<std::string> parse_selection(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(first, last - first + 1));
    }
    return out;
}

BenchmarkRecord run_one(const BenchmarkDef& def, const RunSettings& settings, Clock& clock,
                        const ClockModel& model) {
    const MeasurementPlan& plan = settings.plan;
    plan.validate();
    if (!def.body) {
        throw std::invalid_argument("benchmark " + def.name + " has no body");
    }

    ReleaseGuard guard(def);
    if (def.prepare) {
        def.prepare();
    }

    Sink sink;
    auto body = def.body;
    const auto& setup = or_noop(def.setup);
    const auto& teardown = or_noop(def.teardown);
    const bool advanced = def.mode == BenchmarkMode::advanced;

    const WarmupResult warm = advanced ? warmup_advanced(setup, body, teardown, plan, clock, sink)
                                       : warmup(body, plan, clock, sink);
    const std::uint64_t k = estimate_iterations(warm.per_invocation_ns, model, plan);
    const SampleSet set = advanced ? measure_advanced(setup, body, teardown, k, plan, model, clock, sink)
                                   : collect_samples(body, k, plan, model, clock, sink);

    BenchmarkRecord rec;
    rec.name = def.name;
    rec.family = def.family;
    rec.config = def.config;
    rec.samples_ns = set.per_iteration_ns();
    rec.stats = analyse(rec.samples_ns, plan.resamples, plan.confidence, settings.seed);
    if (rec.samples_ns.size() >= 4) {
        rec.outliers = classify_outliers(rec.samples_ns);
    }
    rec.env = settings.env;
    rec.plan_used = plan;
    rec.iterations_per_sample = k;
    rec.warmup_estimate_ns = warm.per_invocation_ns;
    rec.warmup_invocations = warm.invocations;
    rec.clock_resolution_ns = model.resolution_ns();
    rec.timer_cost_ns = model.timer_cost_ns();

    if (def.verifier) {
        if (def.pre_verify) {
            def.pre_verify();
        }
        if (advanced) {
            setup();
            invoke_into(body, sink);
            teardown();
        } else {
            invoke_into(body, sink);
        }
        try {
            if (auto failure = def.verifier()) {
                rec.verification = {Verification::Status::fail, std::move(*failure)};
            } else {
                rec.verification = {Verification::Status::pass, {}};
            }
        } catch (...) {
            rec.verification = {Verification::Status::fail,
                                "verifier threw: " + detail::describe_current_exception()};
        }
    }
    detail::escape(sink.checksum());
    return rec;
}

std::vector<BenchmarkRecord> run(std::span<const BenchmarkDef> defs, const RunSettings& settings,
                                 Clock& clock, const ClockModel& model) {
    std::vector<BenchmarkRecord> out;
    out.reserve(defs.size());
    for (const auto& def : defs) {
        out.push_back(run_one(def, settings, clock, model));
    }
    return out;
}

double percent_deviation(double framework, double naive) {
    if (!(naive > 0.0)) {
        throw std::invalid_argument("naive mean must be positive");
    }
    return 100.0 * std::abs(framework - naive) / naive;
}

ValidationResult validate_against_naive(const BenchmarkDef& def, const RunSettings& settings,
                                        Clock& clock, const ClockModel& model, std::uint64_t reps) {
    if (reps == 0) {
        throw InvalidPlan("validation needs at least one repetition");
    }
    ValidationResult result;
    result.name = def.name;
    result.record = run_one(def, settings, clock, model);
    result.framework_mean_ns = result.record.stats.mean.point;

    ReleaseGuard guard(def);
    if (def.prepare) {
        def.prepare();
    }
    Sink sink;
    auto body = def.body;
    const bool advanced = def.mode == BenchmarkMode::advanced;
    if (advanced) {
        or_noop(def.setup)();
    }
    const Timestamp t0 = clock.now();
    for (std::uint64_t i = 0; i < reps; ++i) {
        invoke_into(body, sink);
    }
    const Timestamp t1 = clock.now();
    if (advanced) {
        or_noop(def.teardown)();
    }
    detail::escape(sink.checksum());

    result.naive_mean_ns = static_cast<double>((t1 - t0).count()) / static_cast<double>(reps);
    result.percent_deviation = percent_deviation(result.framework_mean_ns, result.naive_mean_ns);
    return result;
}

} // namespace bootbench
