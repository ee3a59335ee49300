#include "rolemine/manifest.hpp"

#include "rolemine/errors.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <fstream>

namespace rolemine {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &length) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_hex_of_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

json build_manifest(const json& config_json,
                    const std::filesystem::path& output_dir,
                    const std::vector<std::string>& artifact_names) {
    json artifacts = json::object();
    for (const auto& name : artifact_names) {
        const auto path = output_dir / name;
        artifacts[name] = {
            {"sha256", sha256_hex_of_file(path)},
            {"bytes", static_cast<long long>(std::filesystem::file_size(path))}};
    }
    return json{{"schema_version", kArtifactSchemaVersion},
                {"tool_version", kToolVersion},
                {"config", config_json},
                {"artifacts", artifacts}};
}

std::vector<std::string> verify_manifest(const json& manifest,
                                         const std::filesystem::path& output_dir) {
    std::vector<std::string> mismatched;
    for (const auto& [name, entry] : manifest.at("artifacts").items()) {
        const auto path = output_dir / name;
        if (!std::filesystem::exists(path) ||
            sha256_hex_of_file(path) != entry.at("sha256").get<std::string>()) {
            mismatched.push_back(name);
        }
    }
    return mismatched;
}

} // namespace rolemine
