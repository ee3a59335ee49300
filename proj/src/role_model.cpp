#include "rolemine/role_model.hpp"

#include "rolemine/csv.hpp"
#include "rolemine/errors.hpp"
#include "rolemine/log.hpp"
#include "rolemine/silhouette.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace rolemine {

const char* to_string(Group g) {
    return g == Group::Active ? "active" : "supporting";
}

Group group_from_string(const std::string& s) {
    if (s == "active") return Group::Active;
    if (s == "supporting") return Group::Supporting;
    throw ConfigError("unknown group: " + s);
}

namespace {

Eigen::VectorXd centroid_of(const Eigen::MatrixXd& scores,
                            const std::vector<int>& rows) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(scores.cols());
    for (int r : rows) c += scores.row(r).transpose();
    return c / static_cast<double>(rows.size());
}

} // namespace

GroupSplit split_groups(const Dendrogram& tree, const Eigen::MatrixXd& scores) {
    const auto& top = tree.merge_of(tree.root());
    GroupSplit split;
    std::vector<int> left = tree.leaves_under(top.left);
    std::vector<int> right = tree.leaves_under(top.right);
    const double left_norm = centroid_of(scores, left).norm();
    const double right_norm = centroid_of(scores, right).norm();
    if (left_norm >= right_norm) {
        split.active_root = top.left;
        split.supporting_root = top.right;
        split.active_rows = std::move(left);
        split.supporting_rows = std::move(right);
    } else {
        split.active_root = top.right;
        split.supporting_root = top.left;
        split.active_rows = std::move(right);
        split.supporting_rows = std::move(left);
    }
    return split;
}

namespace {

/// Mean silhouette of a partition, exact or on a seeded stratified
/// subsample. Returns the evaluated rows alongside their values.
struct SilhouetteEval {
    double mean = 0;
    std::vector<double> values;
    std::vector<int> rows;
    bool subsampled = false;
};

SilhouetteEval evaluate_silhouette(const std::vector<std::vector<int>>& clusters,
                                   const Eigen::MatrixXd& scores,
                                   const CutOptions& opts, int k) {
    std::vector<int> rows;
    std::vector<int> labels;
    size_t total = 0;
    for (const auto& c : clusters) total += c.size();

    SilhouetteEval eval;
    if (total > static_cast<size_t>(opts.exact_limit)) {
        eval.subsampled = true;
        const double frac = static_cast<double>(opts.subsample) /
                            static_cast<double>(total);
        std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(k)};
        std::mt19937_64 rng(seq);
        for (size_t c = 0; c < clusters.size(); ++c) {
            std::vector<int> pool = clusters[c];
            const size_t want = std::max<size_t>(
                1, static_cast<size_t>(frac * static_cast<double>(pool.size())));
            for (size_t i = 0; i < want && i < pool.size(); ++i) {
                std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
                std::swap(pool[i], pool[pick(rng)]);
                rows.push_back(pool[i]);
                labels.push_back(static_cast<int>(c));
            }
        }
    } else {
        for (size_t c = 0; c < clusters.size(); ++c) {
            for (int r : clusters[c]) {
                rows.push_back(r);
                labels.push_back(static_cast<int>(c));
            }
        }
    }

    Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), scores.cols());
    for (size_t i = 0; i < rows.size(); ++i) {
        sub.row(static_cast<Eigen::Index>(i)) = scores.row(rows[i]);
    }
    const Eigen::VectorXd values =
        silhouette_values(sub, labels, static_cast<int>(clusters.size()));
    eval.mean = values.mean();
    eval.values.assign(values.data(), values.data() + values.size());
    eval.rows = std::move(rows);
    return eval;
}

} // namespace

CutSelection cut_roles(const Dendrogram& tree, int subtree_root,
                       const Eigen::MatrixXd& scores, const CutOptions& opts) {
    const int leaves = tree.subtree_size(subtree_root);
    CutSelection sel;

    if (opts.forced_k) {
        const int k = *opts.forced_k;
        if (k < 1 || k > leaves) {
            throw InvalidCandidateRangeError(
                "forced cluster count " + std::to_string(k) +
                " exceeds subtree size " + std::to_string(leaves));
        }
        sel.k = k;
        sel.clusters = tree.cut_subtree(subtree_root, k);
        if (k >= 2) {
            auto eval = evaluate_silhouette(sel.clusters, scores, opts, k);
            sel.candidates.push_back({k, eval.mean, true});
            sel.point_values = std::move(eval.values);
            sel.point_rows = std::move(eval.rows);
            sel.subsampled = eval.subsampled;
        } else {
            sel.candidates.push_back({k, 0.0, false});
        }
        return sel;
    }

    if (opts.k_min > opts.k_max) {
        throw InvalidCandidateRangeError("empty candidate range");
    }
    if (opts.k_max > leaves) {
        throw InvalidCandidateRangeError(
            "candidate count " + std::to_string(opts.k_max) +
            " exceeds subtree size " + std::to_string(leaves));
    }

    int best_k = 0;
    double best_mean = 0;
    std::map<int, SilhouetteEval> evals;
    for (int k = opts.k_min; k <= opts.k_max; ++k) {
        if (k < 2) {
            log_warn("silhouette undefined for k=1, candidate skipped");
            sel.candidates.push_back({k, 0.0, false});
            continue;
        }
        auto clusters = tree.cut_subtree(subtree_root, k);
        auto eval = evaluate_silhouette(clusters, scores, opts, k);
        sel.candidates.push_back({k, eval.mean, true});
        if (best_k == 0 || eval.mean > best_mean) {
            best_k = k;
            best_mean = eval.mean;
        }
        evals.emplace(k, std::move(eval));
    }
    if (best_k == 0) {
        throw InvalidCandidateRangeError("no evaluable candidate cut");
    }
    sel.k = best_k;
    sel.clusters = tree.cut_subtree(subtree_root, best_k);
    auto& chosen = evals.at(best_k);
    sel.point_values = std::move(chosen.values);
    sel.point_rows = std::move(chosen.rows);
    sel.subsampled = chosen.subsampled;
    return sel;
}

namespace {

int pick_cluster(const LabelRule& rule, const std::vector<RoleCluster>& clusters,
                 const std::vector<bool>& labeled,
                 const std::vector<std::string>& factor_labels) {
    int coord = -1;
    if (rule.select == "max_coord" || rule.select == "min_coord") {
        const auto it = std::find(factor_labels.begin(), factor_labels.end(),
                                  rule.factor);
        if (it == factor_labels.end()) {
            log_warn("label rule for '" + rule.label + "' references unknown factor '" +
                     rule.factor + "', skipped");
            return -1;
        }
        coord = static_cast<int>(it - factor_labels.begin());
    } else if (rule.select != "max_norm" && rule.select != "min_norm") {
        throw ConfigError("unknown label rule selector: " + rule.select);
    }

    int best = -1;
    double best_value = 0;
    const bool wants_max = rule.select.rfind("max", 0) == 0;
    for (const auto& c : clusters) {
        if (labeled[static_cast<size_t>(c.id)] || c.group != rule.group) continue;
        const double value = coord >= 0 ? c.centroid[coord] : c.centroid.norm();
        if (best < 0 || (wants_max ? value > best_value : value < best_value)) {
            best = c.id;
            best_value = value;
        }
    }
    return best;
}

} // namespace

RoleModel build_role_model(const GroupSplit& split, const CutSelection& active,
                           const CutSelection& supporting,
                           const Eigen::MatrixXd& scores,
                           const std::vector<RowKey>& keys,
                           const std::vector<std::string>& factor_labels,
                           const std::vector<LabelRule>& rules) {
    RoleModel model;
    model.keys = keys;
    model.factor_labels = factor_labels;
    model.assignment.assign(keys.size(), -1);

    const auto add_clusters = [&](const CutSelection& cut, Group group) {
        for (const auto& rows : cut.clusters) {
            RoleCluster c;
            c.id = static_cast<int>(model.clusters.size());
            c.group = group;
            c.centroid = centroid_of(scores, rows);
            c.size = static_cast<int>(rows.size());
            for (int r : rows) {
                model.assignment[static_cast<size_t>(r)] = c.id;
            }
            model.clusters.push_back(std::move(c));
        }
    };
    add_clusters(active, Group::Active);
    add_clusters(supporting, Group::Supporting);
    (void)split;

    for (int a : model.assignment) {
        if (a < 0) throw Error("role partition does not cover all rows");
    }

    // Rules run in priority batches; equal-priority rules see the same
    // unlabeled state and must not claim the same cluster.
    std::vector<LabelRule> ordered = rules;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const LabelRule& a, const LabelRule& b) {
                         return a.priority < b.priority;
                     });
    std::vector<bool> labeled(model.clusters.size(), false);
    size_t i = 0;
    while (i < ordered.size()) {
        size_t j = i;
        while (j < ordered.size() && ordered[j].priority == ordered[i].priority) ++j;
        std::map<int, const LabelRule*> batch_picks;
        for (size_t r = i; r < j; ++r) {
            const int picked = pick_cluster(ordered[r], model.clusters, labeled,
                                            factor_labels);
            if (picked < 0) continue;
            const auto [it, inserted] = batch_picks.emplace(picked, &ordered[r]);
            if (!inserted) {
                throw LabelRuleConflictError(
                    "rules '" + it->second->label + "' and '" + ordered[r].label +
                    "' (priority " + std::to_string(ordered[r].priority) +
                    ") both match cluster " + std::to_string(picked));
            }
        }
        for (const auto& [cluster_id, rule] : batch_picks) {
            model.clusters[static_cast<size_t>(cluster_id)].label = rule->label;
            labeled[static_cast<size_t>(cluster_id)] = true;
        }
        i = j;
    }
    for (auto& c : model.clusters) {
        if (c.label.empty()) c.label = "Role-" + std::to_string(c.id + 1);
    }
    return model;
}

nlohmann::json RoleModel::to_json() const {
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& c : clusters) {
        std::vector<double> centroid(c.centroid.data(),
                                     c.centroid.data() + c.centroid.size());
        jc.push_back({{"id", c.id},
                      {"group", to_string(c.group)},
                      {"label", c.label},
                      {"centroid", centroid},
                      {"size", c.size}});
    }
    nlohmann::json ja = nlohmann::json::array();
    for (size_t i = 0; i < keys.size(); ++i) {
        ja.push_back({{"owner", keys[i].owner},
                      {"repo", keys[i].name},
                      {"login", keys[i].login},
                      {"period", keys[i].period},
                      {"role", assignment[i]}});
    }
    return nlohmann::json{{"schema_version", kArtifactSchemaVersion},
                          {"factor_labels", factor_labels},
                          {"clusters", jc},
                          {"assignment", ja}};
}

RoleModel RoleModel::from_json(const nlohmann::json& j) {
    if (j.value("schema_version", 0) != kArtifactSchemaVersion) {
        throw MissingArtifactError("role model schema_version mismatch");
    }
    RoleModel model;
    model.factor_labels = j.at("factor_labels").get<std::vector<std::string>>();
    for (const auto& c : j.at("clusters")) {
        RoleCluster cluster;
        cluster.id = c.at("id").get<int>();
        cluster.group = group_from_string(c.at("group").get<std::string>());
        cluster.label = c.at("label").get<std::string>();
        const auto centroid = c.at("centroid").get<std::vector<double>>();
        cluster.centroid = Eigen::Map<const Eigen::VectorXd>(
            centroid.data(), static_cast<Eigen::Index>(centroid.size()));
        cluster.size = c.at("size").get<int>();
        model.clusters.push_back(std::move(cluster));
    }
    for (const auto& a : j.at("assignment")) {
        model.keys.push_back({a.at("owner").get<std::string>(),
                              a.at("repo").get<std::string>(),
                              a.at("login").get<std::string>(),
                              a.at("period").get<int>()});
        model.assignment.push_back(a.at("role").get<int>());
    }
    return model;
}

void export_centroids(const RoleModel& model, const std::filesystem::path& path) {
    CsvWriter csv(path);
    std::vector<std::string> header = {"role_id", "group", "label", "size"};
    for (const auto& f : model.factor_labels) header.push_back(f);
    csv.row(header);
    for (const auto& c : model.clusters) {
        std::vector<std::string> fields = {std::to_string(c.id),
                                           to_string(c.group), c.label,
                                           std::to_string(c.size)};
        for (Eigen::Index i = 0; i < c.centroid.size(); ++i) {
            fields.push_back(format_double(c.centroid[i]));
        }
        csv.row(fields);
    }
    csv.close();
}

} // namespace rolemine
