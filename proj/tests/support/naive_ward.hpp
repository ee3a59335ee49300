#pragma once

// Brute-force agglomeration oracle: recompute every pairwise merge cost
// each step, pick the cheapest, tie-break on the smallest (left, right)
// node-id pair. Quadratic bookkeeping, cubic overall; only for tests.

#include "rolemine/ward.hpp"

#include <Eigen/Core>

#include <limits>
#include <vector>

namespace rolemine::testing {

inline std::vector<WardMerge<double>>
naive_ward(const Eigen::MatrixXd& points) {
    struct Cluster {
        int node_id;
        Eigen::VectorXd centroid;
        int size;
    };
    const int n = static_cast<int>(points.rows());
    std::vector<Cluster> clusters;
    clusters.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        clusters.push_back({i, points.row(i).transpose(), 1});
    }

    std::vector<WardMerge<double>> merges;
    int next_node = n;
    while (clusters.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 1;
        int best_left = 0, best_right = 0;
        for (size_t i = 0; i < clusters.size(); ++i) {
            for (size_t j = i + 1; j < clusters.size(); ++j) {
                const auto& a = clusters[i];
                const auto& b = clusters[j];
                const double d =
                    static_cast<double>(a.size) * b.size / (a.size + b.size) *
                    (a.centroid - b.centroid).squaredNorm();
                const int left = std::min(a.node_id, b.node_id);
                const int right = std::max(a.node_id, b.node_id);
                if (d < best ||
                    (d == best && std::pair(left, right) <
                                      std::pair(best_left, best_right))) {
                    best = d;
                    bi = i;
                    bj = j;
                    best_left = left;
                    best_right = right;
                }
            }
        }
        Cluster& a = clusters[bi];
        Cluster& b = clusters[bj];
        const int merged_size = a.size + b.size;
        merges.push_back({best_left, best_right, best, merged_size});
        a.centroid = (a.centroid * a.size + b.centroid * b.size) / merged_size;
        a.size = merged_size;
        a.node_id = next_node++;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    return merges;
}

} // namespace rolemine::testing
