#pragma once

#include "rolemine/errors.hpp"

#include <Eigen/Core>

#include <vector>

namespace rolemine {

/// Per-point silhouette values (b - a) / max(a, b) with Euclidean
/// distances over the rows of `points`. Singleton clusters score zero by
/// convention, as do points with a == b. Requires at least two non-empty
/// clusters.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
silhouette_values(const Eigen::MatrixBase<Derived>& points,
                  const std::vector<int>& labels, int n_clusters) {
    using Scalar = typename Derived::Scalar;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    const Eigen::Index n = points.rows();
    if (static_cast<size_t>(n) != labels.size()) {
        throw DegenerateMatrixError("silhouette: label count != row count");
    }
    std::vector<Eigen::Index> cluster_size(static_cast<size_t>(n_clusters), 0);
    for (int label : labels) {
        if (label < 0 || label >= n_clusters) {
            throw DegenerateMatrixError("silhouette: label out of range");
        }
        ++cluster_size[static_cast<size_t>(label)];
    }
    int non_empty = 0;
    for (Eigen::Index size : cluster_size) non_empty += size > 0;
    if (non_empty < 2) {
        throw DegenerateMatrixError(
            "silhouette undefined for fewer than 2 clusters");
    }

    Vector out(n);
    std::vector<Scalar> sums(static_cast<size_t>(n_clusters));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::fill(sums.begin(), sums.end(), Scalar(0));
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            sums[static_cast<size_t>(labels[static_cast<size_t>(j)])] +=
                (points.row(i) - points.row(j)).norm();
        }
        const int own = labels[static_cast<size_t>(i)];
        const Eigen::Index own_size = cluster_size[static_cast<size_t>(own)];
        if (own_size <= 1) {
            out[i] = Scalar(0);
            continue;
        }
        const Scalar a = sums[static_cast<size_t>(own)] /
                         static_cast<Scalar>(own_size - 1);
        Scalar b{};
        bool have_b = false;
        for (int c = 0; c < n_clusters; ++c) {
            if (c == own || cluster_size[static_cast<size_t>(c)] == 0) continue;
            const Scalar mean = sums[static_cast<size_t>(c)] /
                                static_cast<Scalar>(cluster_size[static_cast<size_t>(c)]);
            if (!have_b || mean < b) {
                b = mean;
                have_b = true;
            }
        }
        const Scalar denom = std::max(a, b);
        out[i] = denom > Scalar(0) ? (b - a) / denom : Scalar(0);
    }
    return out;
}

} // namespace rolemine
