#pragma once

#include "bootbench/worker_pool.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bootbench {

enum class Dtype { f64, f32, i32 };

std::string_view to_string(Dtype d) noexcept;
std::optional<Dtype> parse_dtype(std::string_view s) noexcept;

/// Parameter axes of one kernel benchmark. `teams` x `threads_per_team`
/// mirrors an offload launch geometry; see for_each_block().
struct KernelConfig {
    Dtype dtype = Dtype::f64;
    std::uint64_t n = 4096;
    std::uint32_t teams = 16;
    std::uint32_t threads_per_team = 256;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if teams or threads_per_team is zero.
    void validate() const;

    bool operator==(const KernelConfig&) const = default;
};

/// Teams needed so that teams * threads_per_team >= n.
std::uint32_t teams_covering(std::uint64_t n, std::uint32_t threads_per_team);

/// Contiguous typed storage. Allocation happens at construction, outside any
/// timed region, and the contents start zeroed.
class DeviceBuffer {
public:
    DeviceBuffer(Dtype dtype, std::size_t length);

    Dtype dtype() const noexcept { return static_cast<Dtype>(storage_.index()); }
    std::size_t size() const noexcept;

    /// Typed view; throws std::invalid_argument on dtype mismatch.
    template <class T>
    std::span<T> view() {
        auto* v = std::get_if<std::vector<T>>(&storage_);
        if (v == nullptr) {
            throw_dtype_mismatch();
        }
        return *v;
    }

    template <class T>
    std::span<const T> view() const {
        const auto* v = std::get_if<std::vector<T>>(&storage_);
        if (v == nullptr) {
            throw_dtype_mismatch();
        }
        return *v;
    }

    /// Element as double (exact for every supported dtype).
    double at(std::size_t i) const;

    template <class F>
    decltype(auto) visit(F&& f) {
        return std::visit([&](auto& v) -> decltype(auto) { return f(std::span(v)); }, storage_);
    }

    template <class F>
    decltype(auto) visit(F&& f) const {
        return std::visit(
            [&](const auto& v) -> decltype(auto) {
                return f(std::span<const typename std::decay_t<decltype(v)>::value_type>(v));
            },
            storage_);
    }

    bool operator==(const DeviceBuffer&) const = default;

private:
    [[noreturn]] void throw_dtype_mismatch() const;

    // Alternative order matches Dtype.
    std::variant<std::vector<double>, std::vector<float>, std::vector<std::int32_t>> storage_;
};

/// Grid-stride decomposition shared by all kernels. Block b covers
/// [b * block, (b + 1) * block) clipped to `units`; team t owns blocks
/// t, t + teams, t + 2 teams, ...; teams are spread over
/// min(teams, pool.size()) workers round-robin. fn(begin, end) is called once
/// per block.
template <class Fn>
void for_each_block(std::uint64_t units, std::uint64_t block, std::uint32_t teams, WorkerPool& pool,
                    Fn&& fn) {
    if (units == 0) {
        return;
    }
    const std::uint64_t blocks = (units + block - 1) / block;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(teams, pool.size()));
    pool.run(workers, [&](unsigned w) {
        for (std::uint64_t team = w; team < teams; team += workers) {
            for (std::uint64_t b = team; b < blocks; b += teams) {
                const std::uint64_t begin = b * block;
                fn(begin, std::min(units, begin + block));
            }
        }
    });
}

namespace kernels {

/// f64/f32: i.i.d. uniform on [-1, 1); i32: uniform integers on [-100, 100].
/// Draws come from PortableRng(seed), one engine output per element.
void init_random(DeviceBuffer& buf, std::uint64_t seed);

/// Zeroes every element. Returns buf[0] + buf[n - 1] as a cheap witness.
double array_init(DeviceBuffer& buf, const KernelConfig& cfg, WorkerPool& pool = WorkerPool::shared());

/// z = a * x + y. Returns z[0] + z[n - 1]. Throws LengthMismatch.
double zaxpy(DeviceBuffer& z, const DeviceBuffer& x, const DeviceBuffer& y, double a,
             const KernelConfig& cfg, WorkerPool& pool = WorkerPool::shared());

/// Stream compaction of strictly positive elements: each one claims a slot in
/// `out` with an atomic fetch-add on a shared counter. Returns the count.
/// out[count..] is left untouched. Throws LengthMismatch if out is shorter
/// than src.
std::uint64_t atomic_capture(const DeviceBuffer& src, DeviceBuffer& out, const KernelConfig& cfg,
                             WorkerPool& pool = WorkerPool::shared());

/// Sum of all elements, each added atomically into one shared accumulator of
/// the element type.
double atomic_update(const DeviceBuffer& src, const KernelConfig& cfg,
                     WorkerPool& pool = WorkerPool::shared());

/// C = alpha * A * B + beta * C for row-major side x side matrices. Work is
/// split over rows, with each block spanning roughly threads_per_team output
/// elements. Every C element accumulates its products in ascending k, so the
/// result does not depend on the decomposition. alpha and beta are converted
/// to the element type first (i32 truncates toward zero). Returns C[0] + C[last].
/// Throws DimensionMismatch.
double gemm(const DeviceBuffer& a, const DeviceBuffer& b, DeviceBuffer& c, std::uint64_t side,
            double alpha, double beta, const KernelConfig& cfg, WorkerPool& pool = WorkerPool::shared());

/// 2 N^3 + 3 N^2.
std::uint64_t gemm_flops(std::uint64_t side) noexcept;

} // namespace kernels

} // namespace bootbench
