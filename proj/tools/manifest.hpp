#pragma once

// Run manifests: what was run, on which inputs, with which seed.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "blockcp/error.hpp"
#include "blockcp/serialize.hpp"
#include "blockcp/version.hpp"

namespace blockcp::cli {

/// Hex SHA-256 of a file's bytes.
inline std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 0xF];
    }
    return out;
}

struct RunManifest {
    std::string command;
    std::vector<std::string> argv;  ///< full replayable argument list, seed resolved
    std::map<std::string, std::string> parameters;
    std::optional<std::uint64_t> seed;
    std::string tool_version = kVersion;
    std::map<std::string, std::string> input_digest;  ///< path -> sha256
    std::vector<std::string> outputs;
    double runtime_ms = 0.0;
};

inline json to_json(const RunManifest& m) {
    json j = document_header("blockcp.manifest");
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    j["input_digest"] = m.input_digest;
    j["outputs"] = m.outputs;
    j["runtime_ms"] = m.runtime_ms;
    return j;
}

inline RunManifest manifest_from_json(const json& j) {
    check_schema(j, "blockcp.manifest");
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.input_digest = j.at("input_digest").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.runtime_ms = j.at("runtime_ms").get<double>();
    return m;
}

inline std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

}  // namespace blockcp::cli
