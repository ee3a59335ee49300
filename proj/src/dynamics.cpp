#include "rolemine/dynamics.hpp"

#include "rolemine/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rolemine {

const char* to_string(Population p) {
    switch (p) {
    case Population::RareOnly: return "rare_only";
    case Population::SupportingOnly: return "supporting_only";
    case Population::EverActive: return "ever_active";
    }
    return "unknown";
}

std::vector<RoleTrajectory> build_trajectories(const RoleModel& model,
                                               int periods) {
    struct ContributorKey {
        std::string owner, name, login;
        auto operator<=>(const ContributorKey&) const = default;
    };
    std::map<ContributorKey, std::vector<int>> sequences;
    for (size_t i = 0; i < model.keys.size(); ++i) {
        const RowKey& key = model.keys[i];
        auto& seq = sequences[{key.owner, key.name, key.login}];
        if (seq.empty()) seq.assign(static_cast<size_t>(periods), kAbsentRole);
        if (key.period < 1 || key.period > periods) {
            throw OutOfWindowError("data point period " +
                                   std::to_string(key.period) +
                                   " outside 1.." + std::to_string(periods));
        }
        seq[static_cast<size_t>(key.period - 1)] = model.assignment[i];
    }
    std::vector<RoleTrajectory> out;
    out.reserve(sequences.size());
    for (auto& [key, seq] : sequences) {
        out.push_back({key.owner, key.name, key.login, std::move(seq)});
    }
    return out;
}

PopulationTag tag_population(const RoleTrajectory& trajectory,
                             const RoleModel& model,
                             const std::set<int>& rare_role_ids) {
    PopulationTag tag;
    bool ever_active = false;
    bool only_rare = true;
    bool constant = true;
    const int first = trajectory.roles.empty() ? kAbsentRole : trajectory.roles[0];
    for (int role : trajectory.roles) {
        if (role != first) constant = false;
        if (role == kAbsentRole) continue;
        if (model.cluster(role).group == Group::Active) ever_active = true;
        if (!rare_role_ids.count(role)) only_rare = false;
    }
    if (ever_active) {
        tag.population = Population::EverActive;
    } else if (only_rare) {
        tag.population = Population::RareOnly;
    } else {
        tag.population = Population::SupportingOnly;
    }
    tag.excluded_constant = constant && first != kAbsentRole;
    return tag;
}

TransitionMatrix transition_matrix(const std::vector<RoleTrajectory>& trajectories,
                                   Population population, const RoleModel& model) {
    const int r = static_cast<int>(model.clusters.size());
    TransitionMatrix m;
    m.population = population;
    m.counts = Eigen::MatrixXi::Zero(r + 1, r + 1);
    for (const auto& c : model.clusters) m.labels.push_back(c.label);
    m.labels.emplace_back("Absent");

    const auto index_of = [r](int role) {
        return role == kAbsentRole ? r : role;
    };
    for (const auto& t : trajectories) {
        for (size_t i = 1; i < t.roles.size(); ++i) {
            m.counts(index_of(t.roles[i - 1]), index_of(t.roles[i])) += 1;
        }
    }
    return m;
}

std::optional<double> rci(const RoleTrajectory& trajectory, const RoleModel& model,
                          bool skip_absent_terms) {
    if (trajectory.roles.size() < 2) return std::nullopt;
    const Eigen::Index k =
        model.clusters.empty() ? 0 : model.clusters.front().centroid.size();
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(k);

    const auto centroid = [&](int role) -> const Eigen::VectorXd& {
        if (role == kAbsentRole) return origin;
        if (role < 0 || role >= static_cast<int>(model.clusters.size())) {
            throw MissingCentroidError("no centroid for role id " +
                                       std::to_string(role));
        }
        return model.cluster(role).centroid;
    };

    double total = 0;
    for (size_t t = 1; t < trajectory.roles.size(); ++t) {
        const int prev = trajectory.roles[t - 1];
        const int cur = trajectory.roles[t];
        if (skip_absent_terms && (prev == kAbsentRole || cur == kAbsentRole)) {
            continue;
        }
        total += (centroid(cur) - centroid(prev)).norm();
    }
    if (total <= 0) return std::nullopt;
    return std::log10(total);
}

double interpolated_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw EmptyPopulationError("quantile of empty data");
    if (sorted.size() == 1) return sorted.front();
    const double h = q * static_cast<double>(sorted.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

RciSummary rci_summary(std::vector<double> scores, int histogram_bins) {
    if (scores.empty()) {
        throw EmptyPopulationError("no role-change scores to summarize");
    }
    std::sort(scores.begin(), scores.end());
    RciSummary s;
    s.count = static_cast<int>(scores.size());
    s.median = interpolated_quantile(scores, 0.5);
    s.q1 = interpolated_quantile(scores, 0.25);
    s.q3 = interpolated_quantile(scores, 0.75);

    const double lo = scores.front();
    const double hi = scores.back();
    const double width = hi > lo ? (hi - lo) / histogram_bins : 1.0;
    s.bins.resize(static_cast<size_t>(histogram_bins));
    for (int b = 0; b < histogram_bins; ++b) {
        s.bins[static_cast<size_t>(b)].lo = lo + b * width;
        s.bins[static_cast<size_t>(b)].hi = lo + (b + 1) * width;
    }
    for (double v : scores) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, histogram_bins - 1);
        s.bins[static_cast<size_t>(b)].count += 1;
    }
    return s;
}

} // namespace rolemine
