#include "rolemine/dendrogram.hpp"

#include "rolemine/errors.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace rolemine {

const WardMerge<double>& Dendrogram::merge_of(int node) const {
    if (node < n || node > root()) {
        throw Error("not an internal dendrogram node: " + std::to_string(node));
    }
    return merges[static_cast<size_t>(node - n)];
}

int Dendrogram::subtree_size(int node) const {
    return is_leaf(node) ? 1 : merge_of(node).size;
}

std::vector<int> Dendrogram::leaves_under(int node) const {
    std::vector<int> leaves;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        if (is_leaf(cur)) {
            leaves.push_back(cur);
        } else {
            const auto& m = merge_of(cur);
            stack.push_back(m.left);
            stack.push_back(m.right);
        }
    }
    std::sort(leaves.begin(), leaves.end());
    return leaves;
}

std::vector<std::vector<int>> Dendrogram::cut_subtree(int node, int k) const {
    if (k < 1 || k > subtree_size(node)) {
        throw InvalidCandidateRangeError(
            "cannot cut a subtree of " + std::to_string(subtree_size(node)) +
            " leaves into " + std::to_string(k) + " clusters");
    }
    // Node ids increase with merge height, so repeatedly splitting the
    // highest-id internal node undoes the most expensive merges first.
    std::vector<int> open{node};
    while (static_cast<int>(open.size()) < k) {
        auto it = std::max_element(open.begin(), open.end());
        const int split = *it;
        open.erase(it);
        const auto& m = merge_of(split);
        open.push_back(m.left);
        open.push_back(m.right);
    }
    std::vector<std::vector<int>> clusters;
    clusters.reserve(open.size());
    for (int cluster_root : open) {
        clusters.push_back(leaves_under(cluster_root));
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    return clusters;
}

nlohmann::json Dendrogram::to_json(const std::vector<RowKey>& leaf_keys) const {
    nlohmann::json jm = nlohmann::json::array();
    for (const auto& m : merges) {
        jm.push_back({m.left, m.right, m.height, m.size});
    }
    nlohmann::json jl = nlohmann::json::array();
    for (const auto& key : leaf_keys) {
        jl.push_back({{"owner", key.owner},
                      {"repo", key.name},
                      {"login", key.login},
                      {"period", key.period}});
    }
    return nlohmann::json{{"schema_version", kArtifactSchemaVersion},
                          {"n", n},
                          {"merges", jm},
                          {"leaves", jl}};
}

Dendrogram Dendrogram::from_json(const nlohmann::json& j,
                                 std::vector<RowKey>* leaf_keys) {
    if (j.value("schema_version", 0) != kArtifactSchemaVersion) {
        throw MissingArtifactError("dendrogram schema_version mismatch");
    }
    Dendrogram d;
    d.n = j.at("n").get<int>();
    for (const auto& m : j.at("merges")) {
        d.merges.push_back({m.at(0).get<int>(), m.at(1).get<int>(),
                            m.at(2).get<double>(), m.at(3).get<int>()});
    }
    if (leaf_keys) {
        leaf_keys->clear();
        for (const auto& l : j.at("leaves")) {
            leaf_keys->push_back({l.at("owner").get<std::string>(),
                                  l.at("repo").get<std::string>(),
                                  l.at("login").get<std::string>(),
                                  l.at("period").get<int>()});
        }
    }
    return d;
}

} // namespace rolemine
