#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace levy::cli {

inline constexpr const char* kManifestName = "manifest.json";

struct RunManifest {
    std::string command;
    /// Fully resolved configuration; feeding it back through --config
    /// reproduces the outputs bit for bit.
    nlohmann::json config;
    std::optional<std::uint64_t> seed;
    std::string version;
    /// File names relative to the output directory.
    std::vector<std::string> outputs;
    std::string started_at;
    double wall_clock_seconds = 0.0;
};

std::string tool_version();

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes dir/manifest.json with a digest per output file.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

/// Reads a JSON config file. A manifest is accepted and yields its "config"
/// object; its command must match `command`.
nlohmann::json load_config_file(const std::filesystem::path& path, const std::string& command);

}  // namespace levy::cli
