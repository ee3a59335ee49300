#pragma once

// Tucker congruence between factor loading columns, with the best match
// over column permutations and signs (factor order and sign are not
// identified by rotation).

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rolemine::testing {

inline double tucker_congruence(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b) {
    const double denom = std::sqrt(a.squaredNorm() * b.squaredNorm());
    return denom > 0 ? a.dot(b) / denom : 0.0;
}

/// Worst per-factor |congruence| under the best column permutation.
inline double matched_min_congruence(const Eigen::MatrixXd& estimated,
                                     const Eigen::MatrixXd& truth) {
    const int k = static_cast<int>(truth.cols());
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1.0;
    do {
        double worst = 1.0;
        for (int j = 0; j < k; ++j) {
            worst = std::min(
                worst, std::abs(tucker_congruence(
                           estimated.col(perm[static_cast<size_t>(j)]),
                           truth.col(j))));
        }
        best = std::max(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace rolemine::testing
