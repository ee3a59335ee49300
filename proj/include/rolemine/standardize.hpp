#pragma once

#include "rolemine/errors.hpp"

#include <Eigen/Core>

#include <cmath>
#include <vector>

namespace rolemine {

template <typename Scalar>
struct Standardized {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Matrix values;                  // n x p, zero mean / unit variance columns
    Vector means;                   // per kept column
    Vector sds;                     // population sd per kept column
    std::vector<int> kept_columns;  // original column indices
    std::vector<int> pruned_columns;
};

/// Column z-scores with population standard deviation. Columns whose
/// variance vanishes (relative to the column mean) are pruned and reported
/// in pruned_columns. Throws DegenerateMatrixError when fewer than two rows
/// or fewer than two usable columns remain.
template <typename Derived>
Standardized<typename Derived::Scalar>
standardize(const Eigen::MatrixBase<Derived>& input) {
    using Scalar = typename Derived::Scalar;
    using Matrix = typename Standardized<Scalar>::Matrix;
    using Vector = typename Standardized<Scalar>::Vector;

    const Eigen::Index n = input.rows();
    const Eigen::Index p = input.cols();
    if (n < 2) {
        throw DegenerateMatrixError("standardize needs at least 2 rows, got " +
                                    std::to_string(n));
    }

    const Matrix x = input.derived();
    Standardized<Scalar> out;
    std::vector<Scalar> means;
    std::vector<Scalar> sds;

    for (Eigen::Index j = 0; j < p; ++j) {
        const Scalar mean = x.col(j).mean();
        const Scalar var = (x.col(j).array() - mean).square().sum() /
                           static_cast<Scalar>(n);
        // Constant columns carry no signal; the threshold is relative so a
        // column of identical large counts prunes despite rounding in mean.
        const Scalar floor = Scalar(1e-24) + Scalar(1e-20) * mean * mean;
        if (var <= floor) {
            out.pruned_columns.push_back(static_cast<int>(j));
            continue;
        }
        out.kept_columns.push_back(static_cast<int>(j));
        means.push_back(mean);
        sds.push_back(std::sqrt(var));
    }

    const Eigen::Index kept = static_cast<Eigen::Index>(out.kept_columns.size());
    if (kept < 2) {
        throw DegenerateMatrixError(
            "fewer than 2 columns with nonzero variance (" +
            std::to_string(kept) + " kept of " + std::to_string(p) + ")");
    }

    out.means = Eigen::Map<const Vector>(means.data(), kept);
    out.sds = Eigen::Map<const Vector>(sds.data(), kept);
    out.values.resize(n, kept);
    for (Eigen::Index j = 0; j < kept; ++j) {
        out.values.col(j) =
            (x.col(out.kept_columns[static_cast<size_t>(j)]).array() -
             out.means[j]) /
            out.sds[j];
    }
    return out;
}

/// Pearson correlation matrix of an already standardized matrix. The
/// diagonal is set to exactly one.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
correlation_of_standardized(const Eigen::MatrixBase<Derived>& z) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const Scalar n = static_cast<Scalar>(z.rows());
    Matrix r = (z.transpose() * z) / n;
    r = (r + r.transpose()).eval() / Scalar(2);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            if (r(i, j) > Scalar(1)) r(i, j) = Scalar(1);
            if (r(i, j) < Scalar(-1)) r(i, j) = Scalar(-1);
        }
        r(i, i) = Scalar(1);
    }
    return r;
}

} // namespace rolemine
