#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace pfopt::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kConfigSchema = "pfopt-config-v1";
inline constexpr const char* kManifestSchema = "pfopt-manifest-v1";

struct RunConfig {
    std::string command;
    std::uint64_t seed = 0;
    std::filesystem::path out = "out";
    unsigned threads = 0;  // 0: PFOPT_THREADS or hardware default
    Json params;           // command-specific block

    Json document() const;  // canonical config JSON (schema + all fields)
};

/// Loads --config input: either a bare config document or a manifest (the
/// embedded config is extracted). The command must match; seed/out/threads
/// may be overridden by the caller afterwards.
RunConfig load_config(const std::filesystem::path& path, const std::string& command);

/// FNV-1a hash of the canonical config dump, hex-encoded.
std::string config_hash(const Json& document);

Json make_manifest(const RunConfig& config);

// Checked field access; throws ConfigError with the field name on misuse.
double get_number(const Json& obj, const std::string& key, double fallback);
double require_number(const Json& obj, const std::string& key);
bool get_bool(const Json& obj, const std::string& key, bool fallback);
std::string get_string(const Json& obj, const std::string& key, const std::string& fallback);

}  // namespace pfopt::cli
