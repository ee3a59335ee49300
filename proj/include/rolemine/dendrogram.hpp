#pragma once

#include "rolemine/metrics.hpp"
#include "rolemine/ward.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace rolemine {

/// Binary merge tree over n leaves. Leaves carry ids 0..n-1; the t-th
/// merge creates node n+t, so the root is 2n-2 and node ids increase with
/// merge height.
struct Dendrogram {
    int n = 0;
    std::vector<WardMerge<double>> merges;

    int root() const { return 2 * n - 2; }
    bool is_leaf(int node) const { return node < n; }
    const WardMerge<double>& merge_of(int node) const;
    int subtree_size(int node) const;

    std::vector<int> leaves_under(int node) const;

    /// Flat partition of the subtree rooted at `node` into k clusters by
    /// undoing its k-1 highest merges. Clusters come back sorted by their
    /// smallest leaf id; each cluster's leaf list is sorted. Cutting at
    /// k+1 always refines the cut at k.
    std::vector<std::vector<int>> cut_subtree(int node, int k) const;

    nlohmann::json to_json(const std::vector<RowKey>& leaf_keys) const;
    static Dendrogram from_json(const nlohmann::json& j,
                                std::vector<RowKey>* leaf_keys = nullptr);
};

} // namespace rolemine
