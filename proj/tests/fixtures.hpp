#pragma once

// Report fixtures shared by unit and acceptance tests.

#include "bootbench/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fixture {

/// Record with the given statistics (ns); the other fields are filled with
/// fixed plausible values.
bootbench::BenchmarkRecord record(std::string name, double mean, double mean_lo, double mean_hi, double sd,
                                  double sd_lo, double sd_hi);

/// Three records spanning ns/us/ms, one passing, one failing, one skipped.
/// The atomic_capture row has mean 44.27 us and stddev 0.95 us.
bootbench::RunDocument golden_document();

/// Two-label comparison fixture: rocm543 (baseline) against rocm600, with one
/// benchmark present only in the baseline.
bootbench::RunDocument rocm543();
bootbench::RunDocument rocm600();

/// Pseudo-random document exercising awkward strings and doubles.
bootbench::RunDocument random_document(std::uint64_t seed);

std::string read_file(const std::string& path);

} // namespace fixture
