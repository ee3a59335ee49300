#pragma once

#include "rolemine/factor.hpp"
#include "rolemine/metrics.hpp"
#include "rolemine/standardize.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace rolemine {

/// Default activity names, applied to factors in extraction order.
/// Anything beyond the list falls back to "Factor N".
std::vector<std::string> default_activity_labels();

struct FactorOptions {
    double tol = 1e-3;
    int max_iter = 100;
    int rotation_max_iter = 1000;
    double rotation_tol = 1e-6;
};

struct FactorModel {
    int k = 0;
    Eigen::VectorXd eigenvalues;   // unreduced correlation matrix, descending
    Eigen::MatrixXd loadings;      // p x k pattern matrix, post-rotation
    Eigen::MatrixXd phi;           // k x k factor correlations
    Eigen::VectorXd communalities; // h^2 per kept metric
    Eigen::VectorXd uniqueness;    // 1 - h^2
    Eigen::MatrixXd scores;        // n x k regression scores
    double variance_explained = 0;
    bool paf_converged = false;
    bool rotation_converged = false;
    std::vector<int> kept_columns;         // indices into kMetricNames
    std::vector<std::string> metric_names; // kept metrics, same order as rows
    std::vector<std::string> factor_labels;

    nlohmann::json to_json(bool include_scores = false) const;
    static FactorModel from_json(const nlohmann::json& j);
};

/// Full extraction pipeline: standardize, iterated PAF with Kaiser
/// retention, quartimin rotation, regression scores.
FactorModel fit_factor_model(const Eigen::MatrixXd& matrix,
                             const std::vector<std::string>& column_names,
                             const FactorOptions& opts,
                             const std::vector<std::string>& activity_labels);

/// Loadings table (metric x factor with strong/moderate flags at 0.5 and
/// 0.3 plus h2/u2 columns) and the factor correlation table.
void export_loadings(const FactorModel& model, const std::filesystem::path& path);
void export_phi(const FactorModel& model, const std::filesystem::path& path);

} // namespace rolemine
