#pragma once

#include "rolemine/event.hpp"
#include "rolemine/factor_model.hpp"
#include "rolemine/role_model.hpp"
#include "rolemine/time_window.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rolemine {

struct ApiConfig {
    std::string base_url = "https://api.github.com";
    std::string token_env = "GITHUB_TOKEN";
    int per_page = 100;
    int max_workers = 4;
    int min_request_interval_ms = 0;
    int max_retries = 3;
};

struct ClusterConfig {
    int active_k = 4;
    int supporting_k = 5;
    bool silhouette_selection = false; // otherwise the forced counts above
    int k_min = 2;
    int k_max = 8;
    int silhouette_exact_limit = 20000;
    int silhouette_subsample = 10000;
    std::uint64_t seed = 20180101;
};

struct DynamicsConfig {
    bool skip_absent_distance = false; // Absent centroid = origin by default
    int histogram_bins = 20;
};

struct LabelConfig {
    std::vector<std::string> activities; // factor index -> activity name
    std::vector<LabelRule> roles;
    std::string rare_role_label = "Rare Contributor";
};

/// One run of the pipeline, parsed from a strict JSON document: unknown
/// keys are rejected so typos never silently fall back to defaults.
struct RunConfig {
    std::vector<ProjectRef> projects;
    TimeWindow window{TimeWindow::from_iso("2015-01-01", "2018-01-01")};
    std::filesystem::path store_dir = "store";
    std::filesystem::path output_dir = "out";
    std::set<std::string> bot_denylist;
    std::filesystem::path alias_file; // optional email -> login JSON map
    FactorOptions factor;
    ClusterConfig cluster;
    DynamicsConfig dynamics;
    LabelConfig labels;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::filesystem::path& path);

    /// Fully resolved configuration, embedded into artifact metadata.
    nlohmann::json to_json() const;

    ApiConfig api;
};

/// Paper-style defaults: activity names in factor order and ordered
/// centroid predicates for the nine role labels.
LabelConfig default_label_config();

/// Loads the alias file when configured; empty map otherwise.
std::map<std::string, std::string> load_aliases(const RunConfig& config);

} // namespace rolemine
