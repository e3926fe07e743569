#include "bootbench/error.hpp"

namespace bootbench {

const char* to_string(FailurePhase phase) noexcept {
    switch (phase) {
    case FailurePhase::body: return "body";
    case FailurePhase::setup: return "setup";
    case FailurePhase::teardown: return "teardown";
    }
    return "unknown";
}

BodyFailure::BodyFailure(FailurePhase phase, std::size_t sample_index, const std::string& what)
    : Error(std::string(to_string(phase)) + " failed in sample " + std::to_string(sample_index) +
            ": " + what),
      phase_(phase),
      sample_index_(sample_index) {}

} // namespace bootbench
