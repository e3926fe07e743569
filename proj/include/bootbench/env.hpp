#pragma once

#include <string>

namespace bootbench {

/// Where and how a run happened. `config_label` names the configuration
/// axis (compiler, flag set, ...) that comparisons join on.
struct EnvMeta {
    std::string hostname;
    std::string os;
    std::string cpu_model;
    std::string build_profile;
    std::string toolchain_version;
    std::string timestamp_utc;
    std::string config_label = "default";

    bool operator==(const EnvMeta&) const = default;
};

/// Probes the current machine. An empty label becomes "default". With
/// `fixed_timestamp` the timestamp is the epoch, which keeps reports from
/// scripted runs byte-reproducible.
EnvMeta capture_environment(std::string config_label, bool fixed_timestamp = false);

} // namespace bootbench
