#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bootbench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The clock never advanced during calibration.
class ClockUnusable : public Error {
public:
    using Error::Error;
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class DuplicateName : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NoCommonBenchmarks : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// Where inside a measurement a benchmark body raised.
enum class FailurePhase { body, setup, teardown };

const char* to_string(FailurePhase phase) noexcept;

/// A benchmark closure threw while being measured. Carries the index of the
/// sample that was being collected and which closure failed.
class BodyFailure : public Error {
public:
    BodyFailure(FailurePhase phase, std::size_t sample_index, const std::string& what);

    FailurePhase phase() const noexcept { return phase_; }
    std::size_t sample_index() const noexcept { return sample_index_; }

private:
    FailurePhase phase_;
    std::size_t sample_index_;
};

} // namespace bootbench
