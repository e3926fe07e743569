#include "bootbench/report.hpp"

#include "bootbench/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace bootbench {

using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest round-trip representation.
std::string exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Column {
    std::string header;
    bool right_align = true;
};

std::string render_table(const std::vector<Column>& cols, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].header.size();
        for (const auto& row : rows) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    auto emit_cell = [&](const std::string& text, std::size_t c, bool right) {
        const std::string pad(width[c] - text.size(), ' ');
        out += right ? pad + text : text + pad;
    };
    auto emit_row = [&](const std::vector<std::string>& cells, bool header) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c > 0) {
                out += " | ";
            }
            emit_cell(cells[c], c, !header && cols[c].right_align);
        }
        while (!out.empty() && out.back() == ' ') {
            out.pop_back();
        }
        out += '\n';
    };
    std::vector<std::string> header;
    for (const auto& c : cols) {
        header.push_back(c.header);
    }
    emit_row(header, true);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c > 0) {
            out += "-+-";
        }
        out += std::string(width[c], '-');
    }
    out += '\n';
    for (const auto& row : rows) {
        emit_row(row, false);
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

std::string verification_cell(const Verification& v) { return std::string(to_string(v.status)); }

// ---- JSON mapping -------------------------------------------------------

ordered_json to_json(const EnvMeta& e) {
    return {{"hostname", e.hostname},           {"os", e.os},
            {"cpu_model", e.cpu_model},         {"build_profile", e.build_profile},
            {"toolchain_version", e.toolchain_version}, {"timestamp_utc", e.timestamp_utc},
            {"config_label", e.config_label}};
}

ordered_json to_json(const MeasurementPlan& p) {
    return {{"samples", p.samples},
            {"resamples", p.resamples},
            {"confidence", p.confidence},
            {"warmup_time_ns", p.warmup_time.count()},
            {"resolution_multiple", p.resolution_multiple}};
}

ordered_json to_json(const KernelConfig& c) {
    return {{"dtype", std::string(to_string(c.dtype))},
            {"n", c.n},
            {"teams", c.teams},
            {"threads_per_team", c.threads_per_team},
            {"seed", c.seed}};
}

ordered_json to_json(const BootstrapEstimate& b) {
    return {{"point", b.point}, {"lower", b.lower}, {"upper", b.upper}, {"confidence", b.confidence}};
}

ordered_json to_json(const BenchmarkRecord& r) {
    return {{"name", r.name},
            {"family", r.family},
            {"config", to_json(r.config)},
            {"stats",
             {{"mean", to_json(r.stats.mean)},
              {"std_dev", to_json(r.stats.std_dev)},
              {"sample_count", r.stats.sample_count},
              {"resample_count", r.stats.resample_count},
              {"rng_seed", r.stats.rng_seed}}},
            {"outliers",
             {{"low_severe", r.outliers.low_severe},
              {"low_mild", r.outliers.low_mild},
              {"high_mild", r.outliers.high_mild},
              {"high_severe", r.outliers.high_severe}}},
            {"env", to_json(r.env)},
            {"verification",
             {{"status", std::string(to_string(r.verification.status))}, {"message", r.verification.message}}},
            {"plan_used", to_json(r.plan_used)},
            {"iterations_per_sample", r.iterations_per_sample},
            {"warmup_estimate_ns", r.warmup_estimate_ns},
            {"warmup_invocations", r.warmup_invocations},
            {"clock_resolution_ns", r.clock_resolution_ns},
            {"timer_cost_ns", r.timer_cost_ns},
            {"samples_ns", r.samples_ns}};
}

EnvMeta env_from(const ordered_json& j) {
    EnvMeta e;
    e.hostname = j.at("hostname").get<std::string>();
    e.os = j.at("os").get<std::string>();
    e.cpu_model = j.at("cpu_model").get<std::string>();
    e.build_profile = j.at("build_profile").get<std::string>();
    e.toolchain_version = j.at("toolchain_version").get<std::string>();
    e.timestamp_utc = j.at("timestamp_utc").get<std::string>();
    e.config_label = j.at("config_label").get<std::string>();
    return e;
}

MeasurementPlan plan_from(const ordered_json& j) {
    MeasurementPlan p;
    p.samples = j.at("samples").get<std::uint64_t>();
    p.resamples = j.at("resamples").get<std::uint64_t>();
    p.confidence = j.at("confidence").get<double>();
    p.warmup_time = Duration(j.at("warmup_time_ns").get<std::int64_t>());
    p.resolution_multiple = j.at("resolution_multiple").get<std::uint64_t>();
    return p;
}

KernelConfig config_from(const ordered_json& j) {
    KernelConfig c;
    const auto dtype = parse_dtype(j.at("dtype").get<std::string>());
    if (!dtype) {
        throw Error("unknown dtype " + j.at("dtype").dump());
    }
    c.dtype = *dtype;
    c.n = j.at("n").get<std::uint64_t>();
    c.teams = j.at("teams").get<std::uint32_t>();
    c.threads_per_team = j.at("threads_per_team").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

BootstrapEstimate estimate_from(const ordered_json& j) {
    return {j.at("point").get<double>(), j.at("lower").get<double>(), j.at("upper").get<double>(),
            j.at("confidence").get<double>()};
}

BenchmarkRecord record_from(const ordered_json& j) {
    BenchmarkRecord r;
    r.name = j.at("name").get<std::string>();
    r.family = j.at("family").get<std::string>();
    r.config = config_from(j.at("config"));
    const auto& s = j.at("stats");
    r.stats.mean = estimate_from(s.at("mean"));
    r.stats.std_dev = estimate_from(s.at("std_dev"));
    r.stats.sample_count = s.at("sample_count").get<std::uint64_t>();
    r.stats.resample_count = s.at("resample_count").get<std::uint64_t>();
    r.stats.rng_seed = s.at("rng_seed").get<std::uint64_t>();
    const auto& o = j.at("outliers");
    r.outliers = {o.at("low_severe").get<std::uint64_t>(), o.at("low_mild").get<std::uint64_t>(),
                  o.at("high_mild").get<std::uint64_t>(), o.at("high_severe").get<std::uint64_t>()};
    r.env = env_from(j.at("env"));
    const auto& v = j.at("verification");
    const auto status = parse_verification_status(v.at("status").get<std::string>());
    if (!status) {
        throw Error("unknown verification status " + v.at("status").dump());
    }
    r.verification = {*status, v.at("message").get<std::string>()};
    r.plan_used = plan_from(j.at("plan_used"));
    r.iterations_per_sample = j.at("iterations_per_sample").get<std::uint64_t>();
    r.warmup_estimate_ns = j.at("warmup_estimate_ns").get<double>();
    r.warmup_invocations = j.at("warmup_invocations").get<std::uint64_t>();
    r.clock_resolution_ns = j.at("clock_resolution_ns").get<double>();
    r.timer_cost_ns = j.at("timer_cost_ns").get<double>();
    r.samples_ns = j.at("samples_ns").get<std::vector<double>>();
    return r;
}

std::string series_value(const BenchmarkRecord& r, const std::string& label, PlotAxis axis) {
    switch (axis) {
    case PlotAxis::dtype: return std::string(to_string(r.config.dtype));
    case PlotAxis::threads_per_team: return std::to_string(r.config.threads_per_team);
    case PlotAxis::n: return std::to_string(r.config.n);
    case PlotAxis::config_label: return label;
    }
    return {};
}

std::string series_key(const BenchmarkRecord& r, const std::string& label, PlotAxis axis) {
    std::string key = r.family;
    if (axis != PlotAxis::dtype) {
        key += "/" + std::string(to_string(r.config.dtype));
    }
    if (axis != PlotAxis::n) {
        key += "/n=" + std::to_string(r.config.n);
    }
    if (axis != PlotAxis::threads_per_team) {
        key += "/tpb=" + std::to_string(r.config.threads_per_team);
    }
    if (axis != PlotAxis::config_label) {
        key += "@" + label;
    }
    return key;
}

} // namespace

DurationUnit unit_for(double reference_ns) noexcept {
    static constexpr DurationUnit units[] = {{"s", 1e9}, {"ms", 1e6}, {"us", 1e3}, {"ns", 1.0}};
    for (const auto& u : units) {
        if (reference_ns / u.scale_ns >= 1.0) {
            return u;
        }
    }
    return units[3];
}

std::string format_scaled(double ns, DurationUnit unit) {
    return fixed2(ns / unit.scale_ns) + " " + std::string(unit.suffix);
}

std::string format_duration(double ns) { return format_scaled(ns, unit_for(ns)); }

std::string render_tabular(const RunDocument& doc) {
    const std::vector<Column> cols{{"name", false}, {"mean"},      {"mean_lo"},   {"mean_hi"},
                                   {"stddev"},      {"stddev_lo"}, {"stddev_hi"}, {"verify", false}};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : doc.records) {
        const auto unit = unit_for(r.stats.mean.point);
        rows.push_back({r.name, format_scaled(r.stats.mean.point, unit), format_scaled(r.stats.mean.lower, unit),
                        format_scaled(r.stats.mean.upper, unit), format_scaled(r.stats.std_dev.point, unit),
                        format_scaled(r.stats.std_dev.lower, unit), format_scaled(r.stats.std_dev.upper, unit),
                        verification_cell(r.verification)});
    }
    return render_table(cols, rows);
}

std::string render_json(const RunDocument& doc) {
    ordered_json records = ordered_json::array();
    for (const auto& r : doc.records) {
        records.push_back(to_json(r));
    }
    const ordered_json j{{"schema_version", doc.schema_version},
                         {"env", to_json(doc.env)},
                         {"plan", to_json(doc.plan)},
                         {"records", std::move(records)}};
    return j.dump(2) + "\n";
}

RunDocument parse_json(std::string_view text) {
    try {
        const auto j = ordered_json::parse(text);
        RunDocument doc;
        doc.schema_version = j.at("schema_version").get<std::string>();
        if (doc.schema_version != bootbench::schema_version) {
            throw Error("unsupported schema_version \"" + doc.schema_version + "\"");
        }
        doc.env = env_from(j.at("env"));
        doc.plan = plan_from(j.at("plan"));
        for (const auto& r : j.at("records")) {
            doc.records.push_back(record_from(r));
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid run document: ") + e.what());
    }
}

std::string render_csv(const RunDocument& doc) {
    std::string out =
        "name,family,dtype,n,teams,threads_per_team,seed,config_label,mean_ns,mean_lo_ns,mean_hi_ns,"
        "stddev_ns,stddev_lo_ns,stddev_hi_ns,verify\n";
    for (const auto& r : doc.records) {
        const std::vector<std::string> fields{r.name,
                                              r.family,
                                              std::string(to_string(r.config.dtype)),
                                              std::to_string(r.config.n),
                                              std::to_string(r.config.teams),
                                              std::to_string(r.config.threads_per_team),
                                              std::to_string(r.config.seed),
                                              r.env.config_label,
                                              exact(r.stats.mean.point),
                                              exact(r.stats.mean.lower),
                                              exact(r.stats.mean.upper),
                                              exact(r.stats.std_dev.point),
                                              exact(r.stats.std_dev.lower),
                                              exact(r.stats.std_dev.upper),
                                              verification_cell(r.verification)};
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += csv_field(fields[i]);
        }
        out += '\n';
    }
    return out;
}

ComparisonMatrix compare(const RunDocument& baseline, std::span<const RunDocument> candidates) {
    ComparisonMatrix m;
    m.baseline_label = baseline.env.config_label;
    std::map<std::string, int> seen{{m.baseline_label, 1}};
    for (const auto& c : candidates) {
        const int count = ++seen[c.env.config_label];
        m.candidate_labels.push_back(count == 1 ? c.env.config_label
                                                : c.env.config_label + "#" + std::to_string(count));
    }

    std::vector<std::map<std::string, const BenchmarkRecord*>> by_name(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (const auto& r : candidates[i].records) {
            by_name[i].emplace(r.name, &r);
        }
    }

    bool any_common = false;
    std::map<std::string, bool> baseline_names;
    for (const auto& b : baseline.records) {
        baseline_names.emplace(b.name, true);
        ComparisonRow row{b.name, b.stats.mean.point, b.stats.std_dev.point, {}};
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto it = by_name[i].find(b.name);
            if (it == by_name[i].end()) {
                row.cells.emplace_back(std::nullopt);
                m.gaps.push_back({b.name, m.candidate_labels[i], true});
                continue;
            }
            const auto& c = *it->second;
            any_common = true;
            ComparisonCell cell;
            cell.baseline_mean = b.stats.mean.point;
            cell.candidate_mean = c.stats.mean.point;
            cell.baseline_std = b.stats.std_dev.point;
            cell.candidate_std = c.stats.std_dev.point;
            cell.speedup = cell.baseline_mean / cell.candidate_mean;
            cell.ci_overlap = b.stats.mean.lower <= c.stats.mean.upper && c.stats.mean.lower <= b.stats.mean.upper;
            row.cells.emplace_back(cell);
        }
        m.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (const auto& r : candidates[i].records) {
            if (!baseline_names.contains(r.name)) {
                m.gaps.push_back({r.name, m.candidate_labels[i], false});
            }
        }
    }
    if (!any_common) {
        throw NoCommonBenchmarks("baseline \"" + m.baseline_label + "\" shares no benchmark with any candidate");
    }
    return m;
}

std::string render_comparison(const ComparisonMatrix& m) {
    std::vector<Column> cols{{"name", false}, {"unit", false}, {m.baseline_label}};
    for (const auto& label : m.candidate_labels) {
        cols.push_back({label});
        cols.push_back({"speedup"});
        cols.push_back({"overlap", false});
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : m.rows) {
        const auto unit = unit_for(row.baseline_mean);
        auto cell_text = [&](double mean, double sd) {
            return fixed2(mean / unit.scale_ns) + " (" + fixed2(sd / unit.scale_ns) + ")";
        };
        std::vector<std::string> cells{row.name, std::string(unit.suffix), cell_text(row.baseline_mean, row.baseline_std)};
        for (const auto& cell : row.cells) {
            if (!cell) {
                cells.insert(cells.end(), {"-", "-", "-"});
                continue;
            }
            char speed[32];
            std::snprintf(speed, sizeof speed, "%.3f", cell->speedup);
            cells.push_back(cell_text(cell->candidate_mean, cell->candidate_std));
            cells.push_back(speed);
            cells.push_back(cell->ci_overlap ? "yes" : "no");
        }
        rows.push_back(std::move(cells));
    }
    std::string out = render_table(cols, rows);
    for (const auto& gap : m.gaps) {
        out += gap.missing_in_candidate ? "gap: " + gap.name + " missing from " + gap.label + "\n"
                                        : "gap: " + gap.name + " (" + gap.label + ") missing from baseline " +
                                              m.baseline_label + "\n";
    }
    return out;
}

std::optional<PlotAxis> parse_plot_axis(std::string_view s) noexcept {
    if (s == "dtype") return PlotAxis::dtype;
    if (s == "threads_per_team" || s == "tpb") return PlotAxis::threads_per_team;
    if (s == "n") return PlotAxis::n;
    if (s == "config_label" || s == "label") return PlotAxis::config_label;
    return std::nullopt;
}

std::string emit_plot_series(std::span<const RunDocument> docs, PlotAxis axis) {
    struct Point {
        std::string x;
        double y;
        double yerr;
    };
    struct Series {
        std::string family;
        std::string key;
        std::vector<Point> points;
    };
    std::vector<Series> series;
    std::map<std::string, std::size_t> index;
    for (const auto& doc : docs) {
        for (const auto& r : doc.records) {
            const auto key = series_key(r, doc.env.config_label, axis);
            auto [it, inserted] = index.emplace(key, series.size());
            if (inserted) {
                series.push_back({r.family, key, {}});
            }
            series[it->second].points.push_back({series_value(r, doc.env.config_label, axis), r.stats.mean.point,
                                                 (r.stats.mean.upper - r.stats.mean.lower) / 2.0});
        }
    }
    std::string out = "family\tseries\tx\ty_ns\tyerr_ns\n";
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            out += s.family + "\t" + s.key + "\t" + p.x + "\t" + exact(p.y) + "\t" + exact(p.yerr) + "\n";
        }
    }
    return out;
}

std::string render_validation(std::span<const ValidationResult> results) {
    const std::vector<Column> cols{{"kernel", false}, {"framework mean"}, {"naive mean"}, {"% deviation"}};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results) {
        char dev[32];
        std::snprintf(dev, sizeof dev, "%.3f %%", r.percent_deviation);
        const auto unit = unit_for(r.naive_mean_ns);
        rows.push_back({r.name, format_scaled(r.framework_mean_ns, unit), format_scaled(r.naive_mean_ns, unit), dev});
    }
    return render_table(cols, rows);
}

} // namespace bootbench
