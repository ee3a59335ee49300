#pragma once

#include "rolemine/dendrogram.hpp"

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rolemine {

enum class Group { Active, Supporting };

const char* to_string(Group g);
Group group_from_string(const std::string& s);

/// Root-level split of the dendrogram into the two top groups. The group
/// whose factor-space centroid has the larger Euclidean norm is Active.
struct GroupSplit {
    int active_root = 0;
    int supporting_root = 0;
    std::vector<int> active_rows;     // leaf ids, sorted
    std::vector<int> supporting_rows; // leaf ids, sorted
};

GroupSplit split_groups(const Dendrogram& tree, const Eigen::MatrixXd& scores);

struct SilhouetteCandidate {
    int k = 0;
    double mean = 0;
    bool evaluated = false; // false for skipped candidates (k = 1)
};

struct CutSelection {
    int k = 0;
    std::vector<std::vector<int>> clusters; // leaf ids per cluster
    std::vector<SilhouetteCandidate> candidates;
    std::vector<double> point_values; // silhouette of the chosen cut
    std::vector<int> point_rows;      // rows the values refer to
    bool subsampled = false;
};

struct CutOptions {
    std::optional<int> forced_k; // set: use exactly this cut
    int k_min = 2;
    int k_max = 8;
    int exact_limit = 20000; // largest subtree for exact silhouette
    int subsample = 10000;
    std::uint64_t seed = 20180101;
};

/// Cuts a subtree into candidate cluster counts, scores each cut by mean
/// silhouette in factor space, and keeps the best one (or the forced
/// count when configured). Candidates with k = 1 are skipped; silhouette
/// is computed exactly up to exact_limit points, then on a seeded
/// stratified subsample.
CutSelection cut_roles(const Dendrogram& tree, int subtree_root,
                       const Eigen::MatrixXd& scores, const CutOptions& opts);

struct LabelRule {
    int priority = 0;
    Group group = Group::Active;
    std::string select; // max_coord | min_coord | max_norm | min_norm
    std::string factor; // activity label, for the coord selectors
    std::string label;
};

struct RoleCluster {
    int id = 0;
    Group group = Group::Active;
    std::string label;
    Eigen::VectorXd centroid;
    int size = 0;
};

struct RoleModel {
    std::vector<RoleCluster> clusters;
    std::vector<int> assignment; // row index -> role id
    std::vector<RowKey> keys;    // row index -> data-point key
    std::vector<std::string> factor_labels;

    const RoleCluster& cluster(int id) const { return clusters.at(static_cast<size_t>(id)); }

    nlohmann::json to_json() const;
    static RoleModel from_json(const nlohmann::json& j);
};

/// Assembles the role model from the two group cuts: centroids, sizes,
/// rule-based labels ("Role-N" fallback). Rules of equal priority must
/// pick distinct clusters or LabelRuleConflictError is thrown.
RoleModel build_role_model(const GroupSplit& split, const CutSelection& active,
                           const CutSelection& supporting,
                           const Eigen::MatrixXd& scores,
                           const std::vector<RowKey>& keys,
                           const std::vector<std::string>& factor_labels,
                           const std::vector<LabelRule>& rules);

void export_centroids(const RoleModel& model, const std::filesystem::path& path);

} // namespace rolemine
