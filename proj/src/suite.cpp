#include "bootbench/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <type_traits>

namespace bootbench {

namespace {

WorkerPool& pool_of(const SuiteOptions& opts) {
    return opts.pool != nullptr ? *opts.pool : WorkerPool::shared();
}

std::function<double()> scripted(std::function<double()> body, const std::string& family,
                                 const KernelConfig& cfg, const SuiteOptions& opts) {
    if (opts.scripted_clock == nullptr) {
        return body;
    }
    return [body = std::move(body), clock = opts.scripted_clock,
            cost = Duration(scripted_cost_ns(family, cfg))] {
        const double r = body();
        clock->advance(cost);
        return r;
    };
}

BenchmarkDef base_def(const std::string& family, const KernelConfig& cfg) {
    BenchmarkDef def;
    def.family = family;
    def.config = cfg;
    def.name = canonical_name(family, cfg);
    return def;
}

std::string mismatch_at(std::size_t i, double got, double want) {
    std::ostringstream out;
    out.precision(17);
    out << "element " << i << ": got " << got << ", expected " << want;
    return out.str();
}

template <class T>
constexpr double epsilon_of() {
    return std::is_integral_v<T> ? 0.0 : static_cast<double>(std::numeric_limits<T>::epsilon());
}

} // namespace

std::int64_t scripted_cost_ns(std::string_view family, const KernelConfig& cfg) {
    const auto n = static_cast<std::int64_t>(cfg.n);
    if (family == "array_init") return n;
    if (family == "zaxpy") return 2 * n;
    if (family == "atomic_capture") return 3 * n;
    if (family == "atomic_update") return 4 * n;
    if (family == "gemm") return std::max<std::int64_t>(1, static_cast<std::int64_t>(kernels::gemm_flops(cfg.n) / 4));
    return std::max<std::int64_t>(1, n);
}

BenchmarkDef make_array_init(const KernelConfig& cfg, const SuiteOptions& opts) {
    struct State {
        std::unique_ptr<DeviceBuffer> buf;
    };
    auto st = std::make_shared<State>();
    auto def = base_def("array_init", cfg);
    def.prepare = [st, cfg] {
        st->buf = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        kernels::init_random(*st->buf, cfg.seed);
    };
    def.release = [st] { st->buf.reset(); };
    def.body = scripted([st, cfg, &pool = pool_of(opts)] { return kernels::array_init(*st->buf, cfg, pool); },
                        def.family, cfg, opts);
    def.pre_verify = [st, cfg] { kernels::init_random(*st->buf, cfg.seed); };
    def.verifier = [st]() -> std::optional<std::string> {
        for (std::size_t i = 0; i < st->buf->size(); ++i) {
            if (st->buf->at(i) != 0.0) {
                return mismatch_at(i, st->buf->at(i), 0.0);
            }
        }
        return std::nullopt;
    };
    return def;
}

BenchmarkDef make_zaxpy(const KernelConfig& cfg, const SuiteOptions& opts) {
    struct State {
        std::unique_ptr<DeviceBuffer> x, y, z;
        std::unique_ptr<DeviceBuffer> host_z;
    };
    auto st = std::make_shared<State>();
    auto def = base_def("zaxpy", cfg);
    def.mode = BenchmarkMode::advanced;
    const double a = opts.zaxpy_factor;
    def.prepare = [st, cfg] {
        st->x = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        st->y = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        st->z = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        st->host_z = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
    };
    def.release = [st] { *st = State{}; };
    def.setup = [st, cfg] {
        kernels::init_random(*st->x, cfg.seed);
        kernels::init_random(*st->y, cfg.seed + 1);
    };
    def.body = scripted([st, cfg, a, &pool = pool_of(opts)] { return kernels::zaxpy(*st->z, *st->x, *st->y, a, cfg, pool); },
                        def.family, cfg, opts);
    def.teardown = [st] { *st->host_z = *st->z; };
    def.verifier = [st, a]() -> std::optional<std::string> {
        return st->host_z->visit([&](auto zs) -> std::optional<std::string> {
            using T = typename decltype(zs)::value_type;
            const auto xs = std::as_const(*st->x).view<T>();
            const auto ys = std::as_const(*st->y).view<T>();
            const T fact = static_cast<T>(a);
            for (std::size_t i = 0; i < zs.size(); ++i) {
                const T want = ys[i] + fact * xs[i];
                if (zs[i] != want) {
                    return mismatch_at(i, static_cast<double>(zs[i]), static_cast<double>(want));
                }
            }
            return std::nullopt;
        });
    };
    return def;
}

BenchmarkDef make_atomic_capture(const KernelConfig& cfg, const SuiteOptions& opts) {
    struct State {
        std::unique_ptr<DeviceBuffer> src, out;
        std::uint64_t count = 0;
    };
    auto st = std::make_shared<State>();
    auto def = base_def("atomic_capture", cfg);
    def.prepare = [st, cfg] {
        st->src = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        st->out = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        kernels::init_random(*st->src, cfg.seed);
    };
    def.release = [st] { *st = State{}; };
    def.body = scripted(
        [st, cfg, &pool = pool_of(opts)] {
            st->count = kernels::atomic_capture(*st->src, *st->out, cfg, pool);
            return static_cast<double>(st->count);
        },
        def.family, cfg, opts);
    def.verifier = [st]() -> std::optional<std::string> {
        return std::as_const(*st->src).visit([&](auto in) -> std::optional<std::string> {
            using T = typename decltype(in)::value_type;
            std::vector<T> want;
            for (T v : in) {
                if (v > T{}) {
                    want.push_back(v);
                }
            }
            if (want.size() != st->count) {
                return "captured " + std::to_string(st->count) + " elements, expected " +
                       std::to_string(want.size());
            }
            const auto got_span = std::as_const(*st->out).view<T>().first(st->count);
            std::vector<T> got(got_span.begin(), got_span.end());
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want) {
                return std::string("captured multiset differs from the positive elements");
            }
            return std::nullopt;
        });
    };
    return def;
}

BenchmarkDef make_atomic_update(const KernelConfig& cfg, const SuiteOptions& opts) {
    struct State {
        std::unique_ptr<DeviceBuffer> src;
        double sum = 0.0;
    };
    auto st = std::make_shared<State>();
    auto def = base_def("atomic_update", cfg);
    def.prepare = [st, cfg] {
        st->src = std::make_unique<DeviceBuffer>(cfg.dtype, cfg.n);
        kernels::init_random(*st->src, cfg.seed);
    };
    def.release = [st] { *st = State{}; };
    def.body = scripted(
        [st, cfg, &pool = pool_of(opts)] {
            st->sum = kernels::atomic_update(*st->src, cfg, pool);
            return st->sum;
        },
        def.family, cfg, opts);
    def.verifier = [st]() -> std::optional<std::string> {
        return std::as_const(*st->src).visit([&](auto in) -> std::optional<std::string> {
            using T = typename decltype(in)::value_type;
            // Compensated serial sum.
            long double sum = 0.0L;
            long double comp = 0.0L;
            long double magnitude = 0.0L;
            for (T v : in) {
                const long double y = static_cast<long double>(v) - comp;
                const long double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
                magnitude += std::fabs(static_cast<long double>(v));
            }
            const double bound =
                static_cast<double>(in.size()) * epsilon_of<T>() * static_cast<double>(magnitude);
            const double err = std::fabs(st->sum - static_cast<double>(sum));
            if (err > bound) {
                std::ostringstream out;
                out.precision(17);
                out << "sum " << st->sum << " differs from compensated oracle " << static_cast<double>(sum)
                    << " by " << err << " (bound " << bound << ")";
                return out.str();
            }
            return std::nullopt;
        });
    };
    return def;
}

BenchmarkDef make_gemm(const KernelConfig& cfg, const SuiteOptions& opts) {
    struct State {
        std::unique_ptr<DeviceBuffer> a, b, c, c_before;
    };
    auto st = std::make_shared<State>();
    auto def = base_def("gemm", cfg);
    const std::uint64_t side = cfg.n;
    const double alpha = opts.gemm_alpha;
    const double beta = opts.gemm_beta;
    def.prepare = [st, cfg, side] {
        st->a = std::make_unique<DeviceBuffer>(cfg.dtype, side * side);
        st->b = std::make_unique<DeviceBuffer>(cfg.dtype, side * side);
        st->c = std::make_unique<DeviceBuffer>(cfg.dtype, side * side);
        kernels::init_random(*st->a, cfg.seed);
        kernels::init_random(*st->b, cfg.seed + 1);
        kernels::init_random(*st->c, cfg.seed + 2);
    };
    def.release = [st] { *st = State{}; };
    def.body = scripted(
        [st, cfg, side, alpha, beta, &pool = pool_of(opts)] {
            return kernels::gemm(*st->a, *st->b, *st->c, side, alpha, beta, cfg, pool);
        },
        def.family, cfg, opts);
    def.pre_verify = [st] { st->c_before = std::make_unique<DeviceBuffer>(*st->c); };
    def.verifier = [st, side, alpha, beta]() -> std::optional<std::string> {
        return std::as_const(*st->c).visit([&](auto cs) -> std::optional<std::string> {
            using T = typename decltype(cs)::value_type;
            const auto as = std::as_const(*st->a).view<T>();
            const auto bs = std::as_const(*st->b).view<T>();
            const auto c0 = std::as_const(*st->c_before).view<T>();
            const double tol = std::is_same_v<T, double> ? 1e-12 : 1e-4;
            for (std::uint64_t i = 0; i < side; ++i) {
                for (std::uint64_t j = 0; j < side; ++j) {
                    const std::size_t idx = i * side + j;
                    if constexpr (std::is_integral_v<T>) {
                        std::int64_t dot = 0;
                        for (std::uint64_t k = 0; k < side; ++k) {
                            dot += static_cast<std::int64_t>(as[i * side + k]) * bs[k * side + j];
                        }
                        const auto want = static_cast<T>(static_cast<T>(alpha) * dot +
                                                         static_cast<T>(beta) * static_cast<std::int64_t>(c0[idx]));
                        if (cs[idx] != want) {
                            return mismatch_at(idx, cs[idx], want);
                        }
                    } else {
                        long double dot = 0.0L;
                        long double scale = 0.0L;
                        for (std::uint64_t k = 0; k < side; ++k) {
                            const long double p = static_cast<long double>(as[i * side + k]) * bs[k * side + j];
                            dot += p;
                            scale += std::fabs(p);
                        }
                        const long double want = alpha * dot + beta * static_cast<long double>(c0[idx]);
                        const long double bound =
                            tol * (std::fabs(alpha) * scale + std::fabs(beta * static_cast<long double>(c0[idx])));
                        if (std::fabs(static_cast<long double>(cs[idx]) - want) > bound) {
                            return mismatch_at(idx, cs[idx], static_cast<double>(want));
                        }
                    }
                }
            }
            return std::nullopt;
        });
    };
    return def;
}

void register_kernel_suite(Registry& registry, const SuiteOptions& opts) {
    using Factory = BenchmarkDef (*)(const KernelConfig&, const SuiteOptions&);
    const Factory factories[] = {make_array_init, make_zaxpy, make_atomic_capture, make_atomic_update};
    for (const Factory make : factories) {
        for (const Dtype dtype : opts.dtypes) {
            for (const auto n : opts.sizes) {
                for (const auto tpb : opts.threads_per_team) {
                    const KernelConfig cfg{dtype, n, teams_covering(n, tpb), tpb, opts.seed};
                    registry.register_benchmark(make(cfg, opts));
                }
            }
        }
    }
    for (const Dtype dtype : opts.dtypes) {
        for (const auto side : opts.gemm_sides) {
            const auto tpb = opts.gemm_threads_per_team;
            const KernelConfig cfg{dtype, side, teams_covering(side * side, tpb), tpb, opts.seed};
            registry.register_benchmark(make_gemm(cfg, opts));
        }
    }
}

} // namespace bootbench
