#include "bootbench/cli.hpp"

#include "bootbench/error.hpp"
#include "bootbench/suite.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <memory>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bootbench {

namespace {

constexpr std::uint64_t default_seed = 1;
constexpr std::uint64_t validation_reps = 100;
constexpr std::uint64_t real_calibration_reps = 10000;
constexpr std::uint64_t scripted_calibration_reps = 1000;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        throw Error("cannot open " + *path + " for writing");
    }
    file << text;
    if (!file) {
        throw Error("failed writing " + *path);
    }
}

std::uint64_t resolve_seed(const CliConfig& config, const CliRuntime& runtime) {
    if (config.seed) {
        return *config.seed;
    }
    if (runtime.env_seed && !runtime.env_seed->empty()) {
        const auto& s = *runtime.env_seed;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw UsageError("BOOTBENCH_SEED is not an unsigned integer: \"" + s + "\"");
        }
        return value;
    }
    return default_seed;
}

// Clock, calibration and suite for one invocation of the tool.
struct Harness {
    std::unique_ptr<Clock> clock;
    std::optional<ClockModel> model;
    Registry registry;
};

Harness make_harness(const CliRuntime& runtime, bool calibrate) {
    Harness h;
    SuiteOptions opts;
    if (runtime.scripted) {
        auto scripted = std::make_unique<ScriptedClock>();
        opts.scripted_clock = scripted.get();
        h.clock = std::move(scripted);
        if (calibrate) {
            ScriptedClock ticking({Duration(100)});
            h.model = estimate_clock(ticking, scripted_calibration_reps);
        }
    } else {
        h.clock = std::make_unique<SteadyClock>();
        if (calibrate) {
            h.model = estimate_clock(*h.clock, real_calibration_reps);
        }
    }
    register_kernel_suite(h.registry, opts);
    return h;
}

std::vector<std::string> selection_patterns(const CliConfig& config) {
    std::vector<std::string> patterns = config.patterns;
    if (config.input_file) {
        const auto extra = parse_selection(read_file(*config.input_file));
        patterns.insert(patterns.end(), extra.begin(), extra.end());
    }
    return patterns;
}

std::string render(const RunDocument& doc, ReporterKind kind) {
    switch (kind) {
    case ReporterKind::tabular: return render_tabular(doc);
    case ReporterKind::json: return render_json(doc);
    case ReporterKind::csv: return render_csv(doc);
    }
    return {};
}

int do_list(const CliConfig& config, const CliRuntime& runtime, std::ostream& out) {
    const Harness h = make_harness(runtime, false);
    std::string text;
    for (const auto& def : h.registry.select(selection_patterns(config))) {
        text += def.name + "\n";
    }
    write_output(config.out, text, out);
    return exit_ok;
}

int do_run(const CliConfig& config, const CliRuntime& runtime, std::ostream& out, std::ostream& err) {
    const auto patterns = selection_patterns(config);
    Harness h = make_harness(runtime, true);
    const auto defs = h.registry.select(patterns);
    if (defs.empty()) {
        err << "warning: no benchmark matches the selection\n";
    }
    RunSettings settings{config.plan, resolve_seed(config, runtime),
                         capture_environment(config.config_label, runtime.scripted)};
    RunDocument doc;
    doc.env = settings.env;
    doc.plan = settings.plan;
    doc.records = run(defs, settings, *h.clock, *h.model);
    write_output(config.out, render(doc, config.reporter), out);

    int code = exit_ok;
    for (const auto& r : doc.records) {
        if (r.verification.status == Verification::Status::fail) {
            err << "verification failed: " << r.name << ": " << r.verification.message << "\n";
            code = exit_verification_failed;
        }
    }
    return code;
}

int do_validate(const CliConfig& config, const CliRuntime& runtime, std::ostream& out, std::ostream& err) {
    auto patterns = selection_patterns(config);
    if (patterns.empty()) {
        patterns.push_back("gemm/*");
    }
    Harness h = make_harness(runtime, true);
    const auto defs = h.registry.select(patterns);
    if (defs.empty()) {
        err << "warning: no benchmark matches the selection\n";
    }
    RunSettings settings{config.plan, resolve_seed(config, runtime),
                         capture_environment(config.config_label, runtime.scripted)};
    std::vector<ValidationResult> results;
    for (const auto& def : defs) {
        results.push_back(validate_against_naive(def, settings, *h.clock, *h.model, validation_reps));
    }
    write_output(config.out, render_validation(results), out);
    int code = exit_ok;
    for (const auto& r : results) {
        if (!(r.percent_deviation < config.max_deviation_pct)) {
            err << "deviation above " << config.max_deviation_pct << "%: " << r.name << "\n";
            code = exit_verification_failed;
        }
        if (r.record.verification.status == Verification::Status::fail) {
            err << "verification failed: " << r.name << ": " << r.record.verification.message << "\n";
            code = exit_verification_failed;
        }
    }
    return code;
}

int do_compare(const CliConfig& config, std::ostream& out) {
    std::vector<RunDocument> docs;
    for (const auto& path : config.documents) {
        docs.push_back(parse_json(read_file(path)));
    }
    if (config.plot_axis) {
        write_output(config.out, emit_plot_series(docs, *config.plot_axis), out);
        return exit_ok;
    }
    const auto matrix = compare(docs.front(), std::span(docs).subspan(1));
    write_output(config.out, render_comparison(matrix), out);
    return exit_ok;
}

} // namespace

CliConfig parse_args(std::span<const std::string> args) {
    CliConfig cfg;
    CLI::App app{"Statistical microbenchmark harness", "bootbench"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::int64_t warmup_ms = 100;
    std::string reporter = "tabular";
    bool list_flag = false;
    std::optional<std::string> plot_axis;

    app.add_option("--benchmark-samples", cfg.plan.samples, "samples per benchmark")->capture_default_str();
    app.add_option("--benchmark-resamples", cfg.plan.resamples, "bootstrap resamples")->capture_default_str();
    app.add_option("--benchmark-confidence-interval", cfg.plan.confidence, "confidence level of the bounds")
        ->capture_default_str();
    app.add_option("--benchmark-warmup-time", warmup_ms, "warmup time in milliseconds")->capture_default_str();
    app.add_option("--input-file", cfg.input_file, "file of benchmark name globs, one per line");
    app.add_option("-r,--reporter", reporter, "report format")
        ->check(CLI::IsMember({"tabular", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--seed", cfg.seed, "bootstrap RNG seed (fallback: BOOTBENCH_SEED)");
    app.add_option("--config-label", cfg.config_label, "label of this configuration")->capture_default_str();
    app.add_flag("--list", list_flag, "list benchmark names");
    app.add_option("--max-deviation-pct", cfg.max_deviation_pct, "validate: allowed % deviation")
        ->capture_default_str();
    app.add_option("patterns", cfg.patterns, "benchmark name globs");

    auto* run_cmd = app.add_subcommand("run", "measure the selected benchmarks");
    run_cmd->add_option("patterns", cfg.patterns, "benchmark name globs");
    auto* validate_cmd = app.add_subcommand("validate", "framework mean vs naive wall-clock mean");
    validate_cmd->add_option("patterns", cfg.patterns, "benchmark name globs (default gemm/*)");
    auto* compare_cmd = app.add_subcommand("compare", "compare run documents, the first is the baseline");
    compare_cmd->add_option("documents", cfg.documents, "JSON run documents")->required();
    compare_cmd->add_option("--plot-axis", plot_axis, "emit plot series along this axis instead")
        ->check(CLI::IsMember({"dtype", "threads_per_team", "tpb", "n", "config_label", "label"}));
    auto* list_cmd = app.add_subcommand("list", "list benchmark names");
    list_cmd->add_option("patterns", cfg.patterns, "benchmark name globs");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        cfg.help = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::CallForAllHelp&) {
        cfg.help = true;
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (validate_cmd->parsed()) {
        cfg.command = Command::validate;
    } else if (compare_cmd->parsed()) {
        cfg.command = Command::compare;
    } else if (list_cmd->parsed() || list_flag) {
        cfg.command = Command::list;
    } else {
        cfg.command = Command::run;
    }
    if (list_flag && cfg.command != Command::list) {
        throw UsageError("--list cannot be combined with a subcommand");
    }
    if (cfg.command == Command::compare && cfg.documents.size() < 2) {
        throw UsageError("compare needs at least two run documents");
    }
    if (warmup_ms < 0) {
        throw UsageError("--benchmark-warmup-time must be >= 0");
    }
    cfg.plan.warmup_time = std::chrono::milliseconds(warmup_ms);
    cfg.reporter = reporter == "json" ? ReporterKind::json
                   : reporter == "csv" ? ReporterKind::csv
                                       : ReporterKind::tabular;
    if (plot_axis) {
        cfg.plot_axis = parse_plot_axis(*plot_axis);
    }
    if (cfg.config_label.empty()) {
        throw UsageError("--config-label must not be empty");
    }
    if (!(cfg.max_deviation_pct > 0.0)) {
        throw UsageError("--max-deviation-pct must be positive");
    }
    try {
        cfg.plan.validate();
    } catch (const InvalidPlan& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int execute(const CliConfig& config, const CliRuntime& runtime, std::ostream& out, std::ostream& err) {
    if (config.help) {
        out << config.help_text;
        return exit_ok;
    }
    try {
        switch (config.command) {
        case Command::list: return do_list(config, runtime, out);
        case Command::run: return do_run(config, runtime, out, err);
        case Command::validate: return do_validate(config, runtime, out, err);
        case Command::compare: return do_compare(config, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_failure;
}

int cli_main(int argc, const char* const* argv, bool scripted) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    CliConfig config;
    try {
        config = parse_args(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return exit_usage;
    }
    CliRuntime runtime;
    runtime.scripted = scripted;
    if (const char* seed = std::getenv("BOOTBENCH_SEED")) {
        runtime.env_seed = seed;
    }
    return execute(config, runtime, std::cout, std::cerr);
}

} // namespace bootbench
