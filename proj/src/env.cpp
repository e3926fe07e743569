#include "bootbench/env.hpp"

#include <sys/utsname.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>

#ifndef BOOTBENCH_BUILD_PROFILE
#define BOOTBENCH_BUILD_PROFILE "unknown"
#endif

namespace bootbench {

namespace {

std::string read_cpu_model() {
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                auto value = line.substr(colon + 1);
                value.erase(0, value.find_first_not_of(" \t"));
                return value;
            }
        }
    }
    return "unknown";
}

std::string toolchain() {
#if defined(__clang__)
    return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    return std::string("gcc ") + __VERSION__;
#else
    return "unknown";
#endif
}

std::string utc_timestamp(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

} // namespace

EnvMeta capture_environment(std::string config_label, bool fixed_timestamp) {
    EnvMeta env;
    std::array<char, 256> host{};
    if (gethostname(host.data(), host.size() - 1) == 0) {
        env.hostname = host.data();
    } else {
        env.hostname = "unknown";
    }
    utsname uts{};
    if (uname(&uts) == 0) {
        env.os = std::string(uts.sysname) + " " + uts.release + " " + uts.machine;
    } else {
        env.os = "unknown";
    }
    env.cpu_model = read_cpu_model();
    env.build_profile = BOOTBENCH_BUILD_PROFILE;
    env.toolchain_version = toolchain();
    const auto now = fixed_timestamp ? std::time_t{0}
                                     : std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    env.timestamp_utc = utc_timestamp(now);
    env.config_label = config_label.empty() ? "default" : std::move(config_label);
    return env;
}

} // namespace bootbench
