#include "levy_cli/manifest.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "levy/errors.hpp"
#include "levy_cli/parse.hpp"

#ifndef LEVY_CALIB_VERSION
#define LEVY_CALIB_VERSION "unknown"
#endif

namespace levy::cli {

std::string tool_version() { return LEVY_CALIB_VERSION; }

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 unavailable");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& name : manifest.outputs) {
        outputs.push_back({{"file", name}, {"sha256", sha256_file(dir / name)}});
    }
    nlohmann::json doc{{"command", manifest.command},
                       {"config", manifest.config},
                       {"seed", manifest.seed ? nlohmann::json(*manifest.seed) : nlohmann::json(nullptr)},
                       {"version", manifest.version},
                       {"outputs", outputs},
                       {"started_at", manifest.started_at},
                       {"wall_clock_seconds", manifest.wall_clock_seconds}};
    std::ofstream out(dir / kManifestName);
    out << doc.dump(2) << '\n';
    if (!out) {
        throw DataError("cannot write " + (dir / kManifestName).string());
    }
}

nlohmann::json load_config_file(const std::filesystem::path& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot read config " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw UsageError("config " + path.string() + " must be a JSON object");
    }
    if (doc.contains("config") && doc.contains("command")) {
        if (doc["command"] != command) {
            throw UsageError("manifest " + path.string() + " belongs to '" + doc["command"].get<std::string>() +
                             "', not '" + command + "'");
        }
        doc = doc["config"];
        if (!doc.is_object()) {
            throw UsageError("manifest config must be a JSON object");
        }
    }
    return doc;
}

}  // namespace levy::cli
