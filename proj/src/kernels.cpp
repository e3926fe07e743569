#include "bootbench/kernels.hpp"

#include "bootbench/error.hpp"
#include "bootbench/rng.hpp"

#include <atomic>
#include <stdexcept>
#include <type_traits>

namespace bootbench {

std::string_view to_string(Dtype d) noexcept {
    switch (d) {
    case Dtype::f64: return "f64";
    case Dtype::f32: return "f32";
    case Dtype::i32: return "i32";
    }
    return "?";
}

std::optional<Dtype> parse_dtype(std::string_view s) noexcept {
    if (s == "f64") return Dtype::f64;
    if (s == "f32") return Dtype::f32;
    if (s == "i32") return Dtype::i32;
    return std::nullopt;
}

void KernelConfig::validate() const {
    if (teams == 0) {
        throw std::invalid_argument("teams must be >= 1");
    }
    if (threads_per_team == 0) {
        throw std::invalid_argument("threads_per_team must be >= 1");
    }
}

std::uint32_t teams_covering(std::uint64_t n, std::uint32_t threads_per_team) {
    if (threads_per_team == 0) {
        throw std::invalid_argument("threads_per_team must be >= 1");
    }
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, (n + threads_per_team - 1) / threads_per_team));
}

DeviceBuffer::DeviceBuffer(Dtype dtype, std::size_t length) {
    switch (dtype) {
    case Dtype::f64: storage_ = std::vector<double>(length); break;
    case Dtype::f32: storage_ = std::vector<float>(length); break;
    case Dtype::i32: storage_ = std::vector<std::int32_t>(length); break;
    }
}

std::size_t DeviceBuffer::size() const noexcept {
    return std::visit([](const auto& v) { return v.size(); }, storage_);
}

double DeviceBuffer::at(std::size_t i) const {
    return std::visit([i](const auto& v) { return static_cast<double>(v.at(i)); }, storage_);
}

void DeviceBuffer::throw_dtype_mismatch() const {
    throw std::invalid_argument("buffer holds " + std::string(to_string(dtype())) +
                                ", requested view of another dtype");
}

namespace kernels {

namespace {

template <class T>
double witness(std::span<const T> v) {
    if (v.empty()) {
        return 0.0;
    }
    return static_cast<double>(v.front()) + static_cast<double>(v.back());
}

void require_same_dtype(const DeviceBuffer& a, const DeviceBuffer& b, const char* what) {
    if (a.dtype() != b.dtype()) {
        throw std::invalid_argument(std::string(what) + ": dtype mismatch between " +
                                    std::string(to_string(a.dtype())) + " and " +
                                    std::string(to_string(b.dtype())));
    }
}

} // namespace

void init_random(DeviceBuffer& buf, std::uint64_t seed) {
    PortableRng rng(seed);
    buf.visit([&](auto span) {
        using T = typename decltype(span)::value_type;
        for (auto& v : span) {
            if constexpr (std::is_integral_v<T>) {
                v = static_cast<T>(static_cast<std::int64_t>(rng.bounded(201)) - 100);
            } else {
                v = static_cast<T>(2.0 * rng.unit() - 1.0);
            }
        }
    });
}

double array_init(DeviceBuffer& buf, const KernelConfig& cfg, WorkerPool& pool) {
    cfg.validate();
    return buf.visit([&](auto span) {
        using T = typename decltype(span)::value_type;
        for_each_block(span.size(), cfg.threads_per_team, cfg.teams, pool,
                       [span](std::uint64_t begin, std::uint64_t end) {
                           for (auto i = begin; i < end; ++i) {
                               span[i] = T{};
                           }
                       });
        return witness<T>(span);
    });
}

double zaxpy(DeviceBuffer& z, const DeviceBuffer& x, const DeviceBuffer& y, double a,
             const KernelConfig& cfg, WorkerPool& pool) {
    cfg.validate();
    if (z.size() != x.size() || z.size() != y.size()) {
        throw LengthMismatch("zaxpy: lengths z=" + std::to_string(z.size()) + " x=" +
                             std::to_string(x.size()) + " y=" + std::to_string(y.size()));
    }
    require_same_dtype(z, x, "zaxpy");
    require_same_dtype(z, y, "zaxpy");
    return z.visit([&](auto zs) {
        using T = typename decltype(zs)::value_type;
        const auto xs = x.view<T>();
        const auto ys = y.view<T>();
        const T fact = static_cast<T>(a);
        for_each_block(zs.size(), cfg.threads_per_team, cfg.teams, pool,
                       [=](std::uint64_t begin, std::uint64_t end) {
                           for (auto i = begin; i < end; ++i) {
                               zs[i] = ys[i] + fact * xs[i];
                           }
                       });
        return witness<T>(zs);
    });
}

std::uint64_t atomic_capture(const DeviceBuffer& src, DeviceBuffer& out, const KernelConfig& cfg,
                             WorkerPool& pool) {
    cfg.validate();
    if (out.size() < src.size()) {
        throw LengthMismatch("atomic_capture: output holds " + std::to_string(out.size()) +
                             " elements, source has " + std::to_string(src.size()));
    }
    require_same_dtype(src, out, "atomic_capture");
    std::atomic<std::uint64_t> count{0};
    src.visit([&](auto in) {
        using T = typename decltype(in)::value_type;
        const auto dst = out.view<T>();
        for_each_block(in.size(), cfg.threads_per_team, cfg.teams, pool,
                       [&, in, dst](std::uint64_t begin, std::uint64_t end) {
                           for (auto i = begin; i < end; ++i) {
                               if (in[i] > T{}) {
                                   dst[count.fetch_add(1, std::memory_order_relaxed)] = in[i];
                               }
                           }
                       });
    });
    return count.load();
}

double atomic_update(const DeviceBuffer& src, const KernelConfig& cfg, WorkerPool& pool) {
    cfg.validate();
    return src.visit([&](auto in) {
        using T = typename decltype(in)::value_type;
        std::atomic<T> sum{T{}};
        for_each_block(in.size(), cfg.threads_per_team, cfg.teams, pool,
                       [&, in](std::uint64_t begin, std::uint64_t end) {
                           for (auto i = begin; i < end; ++i) {
                               sum.fetch_add(in[i], std::memory_order_relaxed);
                           }
                       });
        return static_cast<double>(sum.load());
    });
}

double gemm(const DeviceBuffer& a, const DeviceBuffer& b, DeviceBuffer& c, std::uint64_t side,
            double alpha, double beta, const KernelConfig& cfg, WorkerPool& pool) {
    cfg.validate();
    if (side == 0) {
        throw DimensionMismatch("gemm: matrix side must be >= 1");
    }
    const std::uint64_t elems = side * side;
    if (a.size() != elems || b.size() != elems || c.size() != elems) {
        throw DimensionMismatch("gemm: expected " + std::to_string(elems) + " elements per matrix, got A=" +
                                std::to_string(a.size()) + " B=" + std::to_string(b.size()) +
                                " C=" + std::to_string(c.size()));
    }
    require_same_dtype(c, a, "gemm");
    require_same_dtype(c, b, "gemm");

    constexpr std::uint64_t k_block = 64;
    const std::uint64_t rows_per_block = std::max<std::uint64_t>(1, (cfg.threads_per_team + side - 1) / side);

    return c.visit([&](auto cs) {
        using T = typename decltype(cs)::value_type;
        const auto as = a.view<T>();
        const auto bs = b.view<T>();
        const T al = static_cast<T>(alpha);
        const T be = static_cast<T>(beta);
        for_each_block(side, rows_per_block, cfg.teams, pool,
                       [=](std::uint64_t row_begin, std::uint64_t row_end) {
                           for (auto i = row_begin; i < row_end; ++i) {
                               T* crow = cs.data() + i * side;
                               for (std::uint64_t j = 0; j < side; ++j) {
                                   crow[j] *= be;
                               }
                           }
                           for (std::uint64_t kk = 0; kk < side; kk += k_block) {
                               const std::uint64_t k_end = std::min(side, kk + k_block);
                               for (auto i = row_begin; i < row_end; ++i) {
                                   T* crow = cs.data() + i * side;
                                   const T* arow = as.data() + i * side;
                                   for (auto k = kk; k < k_end; ++k) {
                                       const T aik = al * arow[k];
                                       const T* brow = bs.data() + k * side;
                                       for (std::uint64_t j = 0; j < side; ++j) {
                                           crow[j] += aik * brow[j];
                                       }
                                   }
                               }
                           }
                       });
        return witness<T>(cs);
    });
}

std::uint64_t gemm_flops(std::uint64_t side) noexcept {
    return 2 * side * side * side + 3 * side * side;
}

} // namespace kernels

} // namespace bootbench
