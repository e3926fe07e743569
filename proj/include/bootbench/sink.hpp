#pragma once

#include <cstdint>
#include <type_traits>

namespace bootbench {

namespace detail {

// Empty asm with the value as an input operand: the optimizer must assume the
// value is read, so the computation producing it cannot be removed.
template <class T>
inline void escape(const T& value) noexcept {
#if defined(__clang__)
    asm volatile("" : : "g"(value) : "memory");
#else
    asm volatile("" : : "r,m"(value) : "memory");
#endif
}

} // namespace detail

/// Consumes benchmark results so they cannot be proven dead.
///
/// Arithmetic results are also folded into a running checksum, which gives
/// tests an observable trace of every consumed value.
class Sink {
public:
    template <class T>
    void consume(const T& value) noexcept {
        detail::escape(value);
        ++consumed_;
        if constexpr (std::is_arithmetic_v<T>) {
            checksum_ += static_cast<double>(value);
        }
    }

    /// Void results: nothing to consume.
    void consume() noexcept {}

    std::uint64_t consumed() const noexcept { return consumed_; }
    double checksum() const noexcept { return checksum_; }

private:
    std::uint64_t consumed_ = 0;
    double checksum_ = 0.0;
};

/// Invokes `body` and routes its result (if any) into `sink`.
template <class Body>
inline void invoke_into(Body& body, Sink& sink) {
    if constexpr (std::is_void_v<std::invoke_result_t<Body&>>) {
        body();
    } else {
        sink.consume(body());
    }
}

} // namespace bootbench
