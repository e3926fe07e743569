#pragma once

#include "bootbench/chrono.hpp"
#include "bootbench/kernels.hpp"
#include "bootbench/registry.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace bootbench {

struct SuiteOptions {
    std::vector<Dtype> dtypes{Dtype::f64, Dtype::f32, Dtype::i32};
    std::vector<std::uint64_t> sizes{1u << 12, 1u << 16, 1u << 20};
    std::vector<std::uint32_t> threads_per_team{128, 256, 512, 1024};
    std::vector<std::uint64_t> gemm_sides{64, 256};
    std::uint32_t gemm_threads_per_team = 256;
    std::uint64_t seed = 2024;
    double zaxpy_factor = 2.0;
    double gemm_alpha = 1.0;
    double gemm_beta = 0.5;
    /// When set, every timed body also advances this clock by
    /// scripted_cost_ns(), making measured times independent of the host.
    ScriptedClock* scripted_clock = nullptr;
    WorkerPool* pool = nullptr;
};

/// Virtual cost of one invocation under a scripted clock.
std::int64_t scripted_cost_ns(std::string_view family, const KernelConfig& cfg);

BenchmarkDef make_array_init(const KernelConfig& cfg, const SuiteOptions& opts);
BenchmarkDef make_zaxpy(const KernelConfig& cfg, const SuiteOptions& opts);
BenchmarkDef make_atomic_capture(const KernelConfig& cfg, const SuiteOptions& opts);
BenchmarkDef make_atomic_update(const KernelConfig& cfg, const SuiteOptions& opts);
/// cfg.n is the matrix side.
BenchmarkDef make_gemm(const KernelConfig& cfg, const SuiteOptions& opts);

/// Registers array_init, zaxpy, atomic_capture and atomic_update over
/// dtypes x sizes x threads_per_team (teams sized to cover n), then gemm over
/// dtypes x gemm_sides.
void register_kernel_suite(Registry& registry, const SuiteOptions& opts = {});

} // namespace bootbench
