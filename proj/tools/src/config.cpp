#include "pfopt/cli/config.hpp"

#include "pfopt/cli/errors.hpp"

#include <fstream>

namespace pfopt::cli {

Json RunConfig::document() const {
    Json doc;
    doc["schema"] = kConfigSchema;
    doc["command"] = command;
    doc["seed"] = seed;
    doc["out"] = out.string();
    doc["threads"] = threads;
    doc["params"] = params;
    return doc;
}

RunConfig load_config(const std::filesystem::path& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    const std::string schema = doc.value("schema", "");
    if (schema == kManifestSchema) {
        if (!doc.contains("config")) throw ConfigError("manifest has no embedded config");
        doc = doc["config"];
        if (doc.value("schema", "") != kConfigSchema)
            throw ConfigError("manifest embeds an unrecognized config schema");
    } else if (schema != kConfigSchema) {
        throw ConfigError("unrecognized schema tag '" + schema + "'");
    }

    RunConfig config;
    config.command = doc.value("command", "");
    if (config.command != command)
        throw ConfigError("config is for command '" + config.command + "', expected '" +
                          command + "'");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            throw ConfigError("seed must be an integer");
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    config.out = doc.value("out", std::string("out"));
    if (doc.contains("threads")) config.threads = doc["threads"].get<unsigned>();
    if (!doc.contains("params") || !doc["params"].is_object())
        throw ConfigError("config needs a params object");
    config.params = doc["params"];
    return config;
}

std::string config_hash(const Json& document) {
    const std::string dump = document.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json make_manifest(const RunConfig& config) {
    const Json doc = config.document();
    Json manifest;
    manifest["schema"] = kManifestSchema;
    manifest["command"] = config.command;
    manifest["toolkit_version"] = kToolkitVersion;
    manifest["config_hash"] = config_hash(doc);
    manifest["seed"] = config.seed;
    manifest["config"] = doc;
    return manifest;
}

double get_number(const Json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
    return obj[key].get<double>();
}

double require_number(const Json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw ConfigError("missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

bool get_bool(const Json& obj, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) throw ConfigError("field '" + key + "' must be a boolean");
    return obj[key].get<bool>();
}

std::string get_string(const Json& obj, const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ConfigError("field '" + key + "' must be a string");
    return obj[key].get<std::string>();
}

}  // namespace pfopt::cli
