#pragma once

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rolemine {

std::string sha256_hex(std::string_view bytes);
std::string sha256_hex_of_file(const std::filesystem::path& path);

/// Run manifest: tool and schema versions, the full resolved config, and
/// a checksum per artifact (paths relative to the output directory).
nlohmann::json build_manifest(const nlohmann::json& config_json,
                              const std::filesystem::path& output_dir,
                              const std::vector<std::string>& artifact_names);

/// Recomputes every checksum in a manifest; returns the names that do not
/// match (empty = intact).
std::vector<std::string> verify_manifest(const nlohmann::json& manifest,
                                         const std::filesystem::path& output_dir);

} // namespace rolemine
