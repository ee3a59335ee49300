#pragma once

#include "rolemine/event.hpp"
#include "rolemine/time_window.hpp"

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <vector>

namespace rolemine {

inline constexpr int kMetricCount = 19;

/// Column order is fixed; every exported matrix uses exactly these names.
inline constexpr std::array<const char*, kMetricCount> kMetricNames = {
    "commits_made",
    "loc_changed",
    "files_worked_on",
    "prs_made",
    "avg_pr_desc_len",
    "issues_reported",
    "avg_issue_desc_len",
    "issue_comments",
    "avg_issue_comment_len",
    "pr_comments",
    "avg_pr_comment_len",
    "mentioned_in_issue_comments",
    "mentioned_in_pr_comments",
    "refs_in_issue_comments",
    "refs_in_pr_comments",
    "issue_label_changes",
    "pr_label_changes",
    "issues_closed",
    "prs_closed",
};

struct RowKey {
    std::string owner;
    std::string name;
    std::string login;
    int period = 0;

    auto operator<=>(const RowKey&) const = default;
};

struct MetricsRow {
    RowKey key;
    std::array<double, kMetricCount> m{};

    bool any_nonzero() const;
};

/// One row per (contributor, project, quarter) with at least one action,
/// sorted by key.
struct MetricsMatrix {
    std::vector<MetricsRow> rows;

    Eigen::MatrixXd values() const;
    bool empty() const { return rows.empty(); }
};

/// Aggregates bot-filtered, in-window events into the activity metrics.
/// Mention counts are attributed to the mentioned contributor in the
/// quarter of the mentioning comment; everything else goes to the actor.
MetricsMatrix compute_metrics(const std::vector<ActionEvent>& events,
                              const TimeWindow& window);

void export_matrix(const MetricsMatrix& matrix, const std::filesystem::path& path);
MetricsMatrix import_matrix(const std::filesystem::path& path);

} // namespace rolemine
