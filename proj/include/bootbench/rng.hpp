#pragma once

#include <cstdint>
#include <random>

namespace bootbench {

/// Portable random stream used for resampling and kernel initialization.
///
/// Generator: std::mt19937_64 seeded with the 64-bit seed. Its output sequence
/// is fixed by the C++ standard, so streams are identical across toolchains.
/// Derived draws never go through <random> distributions (their algorithms are
/// implementation-defined):
///
///   bounded(n): Lemire's multiply-shift with rejection. Draw x, form the
///     128-bit product m = x * n; reject while (m mod 2^64) < (2^64 mod n);
///     return m >> 64.
///   unit(): (x >> 11) * 2^-53, a double in [0, 1).
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be nonzero.
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t x = engine_();
        auto m = static_cast<unsigned __int128>(x) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = engine_();
                m = static_cast<unsigned __int128>(x) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace bootbench
