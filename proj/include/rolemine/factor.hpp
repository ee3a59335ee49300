#pragma once

#include "rolemine/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numeric>
#include <vector>

namespace rolemine {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct PafOptions {
    int max_iter = 100;
    Scalar tol = Scalar(1e-3); // max communality change
};

template <typename Scalar>
struct PafResult {
    DenseMatrix<Scalar> loadings;     // p x k, unrotated
    DenseVector<Scalar> eigenvalues;  // of the unreduced correlation matrix
    DenseVector<Scalar> communalities;
    int k = 0;
    bool converged = false;
    int iterations = 0;
};

template <typename Scalar>
struct RotationResult {
    DenseMatrix<Scalar> pattern; // p x k
    DenseMatrix<Scalar> phi;     // k x k factor correlations, unit diagonal
    bool converged = false;
    int iterations = 0;
    Scalar criterion = Scalar(0);
};

namespace detail {

/// Flip each column so its largest-magnitude entry is positive.
/// Returns the per-column signs applied.
template <typename Scalar>
std::vector<Scalar> normalize_column_signs(DenseMatrix<Scalar>& m) {
    std::vector<Scalar> signs(static_cast<size_t>(m.cols()), Scalar(1));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index arg = 0;
        m.col(j).cwiseAbs().maxCoeff(&arg);
        if (m(arg, j) < Scalar(0)) {
            m.col(j) = -m.col(j);
            signs[static_cast<size_t>(j)] = Scalar(-1);
        }
    }
    return signs;
}

/// Quartimin criterion value and gradient wrt the pattern matrix.
template <typename Scalar>
Scalar quartimin(const DenseMatrix<Scalar>& L, DenseMatrix<Scalar>& grad) {
    const Eigen::Index k = L.cols();
    DenseMatrix<Scalar> L2 = L.array().square();
    DenseMatrix<Scalar> cross = DenseMatrix<Scalar>::Ones(k, k);
    cross.diagonal().setZero();
    DenseMatrix<Scalar> x = L2 * cross;
    grad = L.array() * x.array();
    return (L2.array() * x.array()).sum() / Scalar(4);
}

/// Squared multiple correlations as starting communalities. Falls back to
/// a ridge-stabilized inverse when the correlation matrix is singular.
template <typename Scalar>
DenseVector<Scalar> squared_multiple_correlations(const DenseMatrix<Scalar>& r) {
    const Eigen::Index p = r.rows();
    DenseMatrix<Scalar> work = r;
    Scalar ridge = Scalar(0);
    for (int attempt = 0; attempt < 6; ++attempt) {
        Eigen::LDLT<DenseMatrix<Scalar>> ldlt(work);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            DenseMatrix<Scalar> inv =
                ldlt.solve(DenseMatrix<Scalar>::Identity(p, p));
            DenseVector<Scalar> smc(p);
            bool ok = true;
            for (Eigen::Index i = 0; i < p; ++i) {
                const Scalar d = inv(i, i);
                if (!(d > Scalar(0)) || !std::isfinite(d)) {
                    ok = false;
                    break;
                }
                smc[i] = std::min(std::max(Scalar(1) - Scalar(1) / d, Scalar(0)),
                                  Scalar(1) - Scalar(1e-6));
            }
            if (ok) return smc;
        }
        ridge = (ridge == Scalar(0)) ? Scalar(1e-8) : ridge * Scalar(100);
        work = r + ridge * DenseMatrix<Scalar>::Identity(p, p);
    }
    // Last resort: largest absolute off-diagonal correlation per column.
    DenseVector<Scalar> fallback(p);
    for (Eigen::Index i = 0; i < p; ++i) {
        Scalar best = Scalar(0);
        for (Eigen::Index j = 0; j < p; ++j) {
            if (i != j) best = std::max(best, std::abs(r(i, j)));
        }
        fallback[i] = best;
    }
    return fallback;
}

} // namespace detail

/// Iterated principal-axis factoring of a correlation matrix.
///
/// Retention follows the Kaiser criterion applied to the eigenvalues of the
/// unreduced matrix: factors with eigenvalue strictly greater than one.
/// Communalities start at squared multiple correlations and are refined by
/// eigendecomposing the reduced matrix until the largest change falls below
/// tol. Heywood cases are clamped to 1 - 1e-6 (the offending loading row is
/// rescaled so communalities always equal the loading row norms).
template <typename Scalar>
PafResult<Scalar> paf_extract(const DenseMatrix<Scalar>& r,
                              const PafOptions<Scalar>& opts = {}) {
    const Eigen::Index p = r.rows();
    if (p < 2 || r.cols() != p) {
        throw DegenerateMatrixError("correlation matrix must be square, p >= 2");
    }

    PafResult<Scalar> result;

    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> full(r);
    if (full.info() != Eigen::Success) {
        throw SingularCorrelationError("eigendecomposition failed");
    }
    result.eigenvalues = full.eigenvalues().reverse();
    result.k = static_cast<int>(
        (result.eigenvalues.array() > Scalar(1)).count());
    if (result.k == 0) {
        throw NoFactorsRetainedError(
            "no correlation-matrix eigenvalue exceeds 1.0");
    }
    const Eigen::Index k = result.k;

    DenseVector<Scalar> h = detail::squared_multiple_correlations(r);
    DenseMatrix<Scalar> reduced = r;
    DenseMatrix<Scalar> loadings(p, k);

    const Scalar heywood_cap = Scalar(1) - Scalar(1e-6);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        reduced.diagonal() = h;
        Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> eig(reduced);
        if (eig.info() != Eigen::Success) {
            throw SingularCorrelationError(
                "eigendecomposition of reduced matrix failed");
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            const Eigen::Index src = p - 1 - j; // descending order
            const Scalar ev = std::max(eig.eigenvalues()[src], Scalar(0));
            loadings.col(j) = eig.eigenvectors().col(src) * std::sqrt(ev);
        }
        DenseVector<Scalar> h_new = loadings.rowwise().squaredNorm();
        for (Eigen::Index i = 0; i < p; ++i) {
            if (h_new[i] > heywood_cap) {
                loadings.row(i) *= std::sqrt(heywood_cap / h_new[i]);
                h_new[i] = heywood_cap;
            }
        }
        const Scalar delta = (h_new - h).cwiseAbs().maxCoeff();
        h = h_new;
        result.iterations = iter;
        if (delta < opts.tol) {
            result.converged = true;
            break;
        }
    }

    detail::normalize_column_signs(loadings);
    result.loadings = std::move(loadings);
    result.communalities = std::move(h);
    return result;
}

/// Direct oblimin rotation with gamma = 0 (quartimin) by gradient
/// projection, starting from the identity so results are deterministic.
/// Non-convergence is reported through the flag; the best iterate is
/// still returned. Factors come back ordered by explained sum of squares
/// with sign-normalized columns and an exactly unit diagonal on phi.
template <typename Scalar>
RotationResult<Scalar> rotate_oblique(const DenseMatrix<Scalar>& unrotated,
                                      int max_iter = 1000,
                                      Scalar eps = Scalar(1e-6)) {
    const Eigen::Index p = unrotated.rows();
    const Eigen::Index k = unrotated.cols();
    if (k < 1) throw DegenerateMatrixError("rotation needs at least one factor");

    RotationResult<Scalar> result;
    if (k == 1) {
        result.pattern = unrotated;
        detail::normalize_column_signs(result.pattern);
        result.phi = DenseMatrix<Scalar>::Ones(1, 1);
        result.converged = true;
        return result;
    }

    DenseMatrix<Scalar> t = DenseMatrix<Scalar>::Identity(k, k);
    DenseMatrix<Scalar> ti = t;
    DenseMatrix<Scalar> pattern = unrotated;
    DenseMatrix<Scalar> gq(p, k);
    Scalar f = detail::quartimin(pattern, gq);
    DenseMatrix<Scalar> grad = -(pattern.transpose() * gq * ti).transpose();

    Scalar step = Scalar(1);
    bool converged = false;
    int iterations = 0;
    for (int iter = 0; iter <= max_iter; ++iter) {
        iterations = iter;
        // Project the gradient onto the manifold of unit-length columns.
        DenseMatrix<Scalar> gp =
            grad - t * (t.array() * grad.array()).colwise().sum().matrix().asDiagonal();
        const Scalar s = gp.norm();
        if (s < eps) {
            converged = true;
            break;
        }
        step *= Scalar(2);
        DenseMatrix<Scalar> t_next, ti_next, pattern_next, gq_next;
        Scalar f_next = f;
        for (int halving = 0; halving <= 10; ++halving) {
            DenseMatrix<Scalar> x = t - step * gp;
            DenseVector<Scalar> norms = x.colwise().norm();
            t_next = x * norms.cwiseInverse().asDiagonal();
            ti_next = t_next.inverse();
            pattern_next = unrotated * ti_next.transpose();
            f_next = detail::quartimin(pattern_next, gq_next);
            if (f_next < f - Scalar(0.5) * s * s * step) break;
            step /= Scalar(2);
        }
        t = t_next;
        ti = ti_next;
        pattern = pattern_next;
        f = f_next;
        grad = -(pattern.transpose() * gq_next * ti).transpose();
    }

    DenseMatrix<Scalar> phi = t.transpose() * t;

    // Order factors by explained sum of squares, largest first.
    std::vector<Eigen::Index> order(static_cast<size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    const DenseVector<Scalar> ss = pattern.colwise().squaredNorm();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return ss[a] > ss[b]; });

    DenseMatrix<Scalar> pattern_sorted(p, k);
    DenseMatrix<Scalar> phi_sorted(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        pattern_sorted.col(j) = pattern.col(order[static_cast<size_t>(j)]);
    }
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            phi_sorted(a, b) = phi(order[static_cast<size_t>(a)],
                                   order[static_cast<size_t>(b)]);
        }
    }
    const auto signs = detail::normalize_column_signs(pattern_sorted);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            phi_sorted(a, b) *= signs[static_cast<size_t>(a)] *
                                signs[static_cast<size_t>(b)];
        }
    }
    phi_sorted.diagonal().setOnes();

    result.pattern = std::move(pattern_sorted);
    result.phi = std::move(phi_sorted);
    result.converged = converged;
    result.iterations = iterations;
    result.criterion = f;
    return result;
}

/// Regression (Thurstone) factor scores: Z R^-1 (pattern phi). Falls back
/// to a small ridge when the correlation matrix is ill-conditioned and
/// throws SingularCorrelationError if that fails too.
template <typename Scalar>
DenseMatrix<Scalar> factor_scores(const DenseMatrix<Scalar>& z,
                                  const DenseMatrix<Scalar>& r,
                                  const DenseMatrix<Scalar>& pattern,
                                  const DenseMatrix<Scalar>& phi) {
    const DenseMatrix<Scalar> structure = pattern * phi;
    const Scalar scale = std::max(structure.template lpNorm<Eigen::Infinity>(),
                                  Scalar(1));

    const auto solve_ok = [&](const DenseMatrix<Scalar>& m,
                              DenseMatrix<Scalar>& w) {
        Eigen::LDLT<DenseMatrix<Scalar>> ldlt(m);
        if (ldlt.info() != Eigen::Success) return false;
        w = ldlt.solve(structure);
        const Scalar residual = (m * w - structure).template lpNorm<Eigen::Infinity>();
        return std::isfinite(residual) && residual <= Scalar(1e-6) * scale;
    };

    DenseMatrix<Scalar> weights;
    if (!solve_ok(r, weights)) {
        const DenseMatrix<Scalar> ridged =
            r + Scalar(1e-8) * DenseMatrix<Scalar>::Identity(r.rows(), r.cols());
        if (!solve_ok(ridged, weights)) {
            throw SingularCorrelationError(
                "correlation matrix singular even with ridge fallback");
        }
    }
    return z * weights;
}

} // namespace rolemine
