#include "rolemine/factor_model.hpp"

#include "rolemine/csv.hpp"
#include "rolemine/errors.hpp"
#include "rolemine/log.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>

namespace rolemine {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return {};
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>();
        }
    }
    return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = j.at(static_cast<size_t>(i)).get<double>();
    }
    return v;
}

const char* loading_flag(double value) {
    const double mag = std::abs(value);
    if (mag >= 0.5) return "strong";
    if (mag >= 0.3) return "moderate";
    return "";
}

} // namespace

std::vector<std::string> default_activity_labels() {
    return {"Knowledge Sharing", "Code Contribution", "Issue Coordination",
            "Progress Control",  "Code Tweaking",     "Issue Reporting"};
}

FactorModel fit_factor_model(const Eigen::MatrixXd& matrix,
                             const std::vector<std::string>& column_names,
                             const FactorOptions& opts,
                             const std::vector<std::string>& activity_labels) {
    if (static_cast<size_t>(matrix.cols()) != column_names.size()) {
        throw DegenerateMatrixError("column name count mismatch");
    }

    const Standardized<double> z = standardize(matrix);
    for (int pruned : z.pruned_columns) {
        log_warn("metric '" + column_names[static_cast<size_t>(pruned)] +
                 "' has zero variance, pruned before factoring");
    }

    const Eigen::MatrixXd r = correlation_of_standardized(z.values);
    PafOptions<double> paf_opts;
    paf_opts.tol = opts.tol;
    paf_opts.max_iter = opts.max_iter;
    const PafResult<double> paf = paf_extract(r, paf_opts);
    if (!paf.converged) {
        log_warn("communality iteration did not converge within " +
                 std::to_string(opts.max_iter) + " iterations");
    }

    const RotationResult<double> rot =
        rotate_oblique(paf.loadings, opts.rotation_max_iter, opts.rotation_tol);
    if (!rot.converged) {
        log_warn("oblique rotation hit the iteration cap; best iterate kept");
    }

    FactorModel model;
    model.k = paf.k;
    model.eigenvalues = paf.eigenvalues;
    model.loadings = rot.pattern;
    model.phi = rot.phi;
    model.communalities = paf.communalities;
    model.uniqueness = (1.0 - paf.communalities.array()).matrix();
    model.scores = factor_scores(z.values, r, rot.pattern, rot.phi);
    model.variance_explained =
        paf.communalities.sum() / static_cast<double>(z.values.cols());
    model.paf_converged = paf.converged;
    model.rotation_converged = rot.converged;
    model.kept_columns = z.kept_columns;
    for (int col : z.kept_columns) {
        model.metric_names.push_back(column_names[static_cast<size_t>(col)]);
    }
    for (int f = 0; f < model.k; ++f) {
        model.factor_labels.push_back(
            f < static_cast<int>(activity_labels.size())
                ? activity_labels[static_cast<size_t>(f)]
                : "Factor " + std::to_string(f + 1));
    }
    return model;
}

nlohmann::json FactorModel::to_json(bool include_scores) const {
    nlohmann::json j{{"schema_version", kArtifactSchemaVersion},
                     {"k", k},
                     {"eigenvalues", vector_to_json(eigenvalues)},
                     {"loadings", matrix_to_json(loadings)},
                     {"phi", matrix_to_json(phi)},
                     {"communalities", vector_to_json(communalities)},
                     {"uniqueness", vector_to_json(uniqueness)},
                     {"variance_explained", variance_explained},
                     {"paf_converged", paf_converged},
                     {"rotation_converged", rotation_converged},
                     {"kept_columns", kept_columns},
                     {"metric_names", metric_names},
                     {"factor_labels", factor_labels}};
    if (include_scores) j["scores"] = matrix_to_json(scores);
    return j;
}

FactorModel FactorModel::from_json(const nlohmann::json& j) {
    if (j.value("schema_version", 0) != kArtifactSchemaVersion) {
        throw MissingArtifactError("factor model schema_version mismatch");
    }
    FactorModel m;
    m.k = j.at("k").get<int>();
    m.eigenvalues = vector_from_json(j.at("eigenvalues"));
    m.loadings = matrix_from_json(j.at("loadings"));
    m.phi = matrix_from_json(j.at("phi"));
    m.communalities = vector_from_json(j.at("communalities"));
    m.uniqueness = vector_from_json(j.at("uniqueness"));
    m.variance_explained = j.at("variance_explained").get<double>();
    m.paf_converged = j.at("paf_converged").get<bool>();
    m.rotation_converged = j.at("rotation_converged").get<bool>();
    m.kept_columns = j.at("kept_columns").get<std::vector<int>>();
    m.metric_names = j.at("metric_names").get<std::vector<std::string>>();
    m.factor_labels = j.at("factor_labels").get<std::vector<std::string>>();
    if (j.contains("scores")) m.scores = matrix_from_json(j.at("scores"));
    return m;
}

void export_loadings(const FactorModel& model, const std::filesystem::path& path) {
    CsvWriter csv(path);
    std::vector<std::string> header{"metric"};
    for (const auto& label : model.factor_labels) {
        header.push_back(label);
        header.push_back(label + " flag");
    }
    header.emplace_back("h2");
    header.emplace_back("u2");
    csv.row(header);
    for (Eigen::Index i = 0; i < model.loadings.rows(); ++i) {
        std::vector<std::string> fields{model.metric_names[static_cast<size_t>(i)]};
        for (int f = 0; f < model.k; ++f) {
            fields.push_back(format_double(model.loadings(i, f)));
            fields.emplace_back(loading_flag(model.loadings(i, f)));
        }
        fields.push_back(format_double(model.communalities[i]));
        fields.push_back(format_double(model.uniqueness[i]));
        csv.row(fields);
    }
    csv.close();
}

void export_phi(const FactorModel& model, const std::filesystem::path& path) {
    CsvWriter csv(path);
    std::vector<std::string> header{"factor"};
    for (const auto& label : model.factor_labels) header.push_back(label);
    csv.row(header);
    for (int a = 0; a < model.k; ++a) {
        std::vector<std::string> fields{model.factor_labels[static_cast<size_t>(a)]};
        for (int b = 0; b < model.k; ++b) {
            fields.push_back(format_double(model.phi(a, b)));
        }
        csv.row(fields);
    }
    csv.close();
}

} // namespace rolemine
