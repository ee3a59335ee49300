#pragma once

#include "rolemine/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <numeric>
#include <vector>

namespace rolemine {

template <typename Scalar>
struct WardMerge {
    int left = 0;   // node id: leaves 0..n-1, merge t creates node n+t
    int right = 0;  // left < right
    Scalar height = Scalar(0); // increase in within-cluster sum of squares
    int size = 0;   // leaves in the merged cluster
};

namespace detail {

// Maps cluster representatives to dendrogram node ids while replaying
// merges in height order.
class MergeLabeler {
public:
    explicit MergeLabeler(int n) : parent_(2 * n - 1), next_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        int root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const int up = parent_[x];
            parent_[x] = root;
            x = up;
        }
        return root;
    }

    void merge(int a, int b) {
        parent_[a] = next_;
        parent_[b] = next_;
        ++next_;
    }

private:
    std::vector<int> parent_;
    int next_;
};

} // namespace detail

/// Agglomerative Ward clustering over the rows of `points` via the
/// nearest-neighbor-chain algorithm. Cluster distance is the increase in
/// total within-cluster sum of squares caused by the merge,
///   D(a, b) = |a||b| / (|a|+|b|) * ||centroid_a - centroid_b||^2,
/// evaluated from running centroids (algebraically the Lance-Williams
/// recurrence for Ward linkage). Merging two singletons therefore costs
/// half their squared distance. Ties break toward the smallest cluster
/// index, and the merge list is relabeled in nondecreasing height order,
/// so the result is deterministic.
template <typename Derived>
std::vector<WardMerge<typename Derived::Scalar>>
ward_cluster(const Eigen::MatrixBase<Derived>& points) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    const int n = static_cast<int>(points.rows());
    if (n < 2) throw DegenerateMatrixError("ward clustering needs n >= 2");

    Matrix centroids = points.derived();
    std::vector<Scalar> sizes(static_cast<size_t>(n), Scalar(1));
    std::vector<bool> active(static_cast<size_t>(n), true);

    const auto dist = [&](int a, int b) {
        const Scalar sa = sizes[static_cast<size_t>(a)];
        const Scalar sb = sizes[static_cast<size_t>(b)];
        return sa * sb / (sa + sb) *
               (centroids.row(a) - centroids.row(b)).squaredNorm();
    };

    struct RawMerge {
        int a;
        int b;
        Scalar height;
        int size;
    };
    std::vector<RawMerge> raw;
    raw.reserve(static_cast<size_t>(n - 1));

    std::vector<int> chain;
    chain.reserve(static_cast<size_t>(n));
    int lowest_active = 0;

    while (raw.size() < static_cast<size_t>(n - 1)) {
        if (chain.empty()) {
            while (!active[static_cast<size_t>(lowest_active)]) ++lowest_active;
            chain.push_back(lowest_active);
        }
        const int top = chain.back();
        const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;

        int best = -1;
        Scalar best_dist{};
        if (prev >= 0) {
            best = prev;
            best_dist = dist(top, prev);
        }
        for (int i = 0; i < n; ++i) {
            if (!active[static_cast<size_t>(i)] || i == top || i == prev) continue;
            const Scalar d = dist(top, i);
            if (best < 0 || d < best_dist ||
                (d == best_dist && best != prev && i < best)) {
                best = i;
                best_dist = d;
            }
        }

        if (best == prev) {
            chain.pop_back();
            chain.pop_back();
            const int keep = std::min(top, prev);
            const int drop = std::max(top, prev);
            const Scalar sk = sizes[static_cast<size_t>(keep)];
            const Scalar sd = sizes[static_cast<size_t>(drop)];
            centroids.row(keep) =
                (sk * centroids.row(keep) + sd * centroids.row(drop)) / (sk + sd);
            sizes[static_cast<size_t>(keep)] = sk + sd;
            active[static_cast<size_t>(drop)] = false;
            raw.push_back({keep, drop, best_dist, static_cast<int>(sk + sd)});
        } else {
            chain.push_back(best);
        }
    }

    // Ward linkage is monotone, so sorting by height recovers the unique
    // bottom-up merge order; the sort is stable for reproducible ties.
    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawMerge& x, const RawMerge& y) {
                         return x.height < y.height;
                     });

    detail::MergeLabeler labeler(n);
    std::vector<WardMerge<Scalar>> merges;
    merges.reserve(raw.size());
    for (const RawMerge& m : raw) {
        const int la = labeler.find(m.a);
        const int lb = labeler.find(m.b);
        merges.push_back({std::min(la, lb), std::max(la, lb), m.height, m.size});
        labeler.merge(la, lb);
    }
    return merges;
}

} // namespace rolemine
