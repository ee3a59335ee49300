#include "rolemine/metrics.hpp"

#include "rolemine/csv.hpp"
#include "rolemine/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rolemine {

namespace {

// Column indices into MetricsRow::m, in Table order.
enum Metric : int {
    kCommits = 0,
    kLoc = 1,
    kFiles = 2,
    kPrsMade = 3,
    kAvgPrDescLen = 4,
    kIssuesReported = 5,
    kAvgIssueDescLen = 6,
    kIssueComments = 7,
    kAvgIssueCommentLen = 8,
    kPrComments = 9,
    kAvgPrCommentLen = 10,
    kMentionedIssue = 11,
    kMentionedPr = 12,
    kRefsIssue = 13,
    kRefsPr = 14,
    kIssueLabels = 15,
    kPrLabels = 16,
    kIssuesClosed = 17,
    kPrsClosed = 18,
};

struct Accumulator {
    std::array<double, kMetricCount> m{};
    std::set<std::string> files;
    double pr_desc_len_sum = 0;
    double issue_desc_len_sum = 0;
    double issue_comment_len_sum = 0;
    double pr_comment_len_sum = 0;
};

} // namespace

bool MetricsRow::any_nonzero() const {
    return std::any_of(m.begin(), m.end(), [](double v) { return v != 0.0; });
}

Eigen::MatrixXd MetricsMatrix::values() const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), kMetricCount);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < kMetricCount; ++j) {
            out(static_cast<Eigen::Index>(i), j) = rows[i].m[j];
        }
    }
    return out;
}

MetricsMatrix compute_metrics(const std::vector<ActionEvent>& events,
                              const TimeWindow& window) {
    std::map<RowKey, Accumulator> acc;

    const auto key_for = [](const ActionEvent& e, const std::string& login,
                            int period) {
        return RowKey{e.project.owner, e.project.name, login, period};
    };

    for (const auto& e : events) {
        const int period = window.period_of(e.ts);
        Accumulator& a = acc[key_for(e, e.actor, period)];
        switch (e.kind) {
        case ActionKind::Commit:
            a.m[kCommits] += 1;
            a.m[kLoc] += static_cast<double>(e.loc_changed);
            a.files.insert(e.files.begin(), e.files.end());
            break;
        case ActionKind::PrOpened:
            a.m[kPrsMade] += 1;
            a.pr_desc_len_sum += static_cast<double>(e.body_length);
            break;
        case ActionKind::IssueOpened:
            a.m[kIssuesReported] += 1;
            a.issue_desc_len_sum += static_cast<double>(e.body_length);
            break;
        case ActionKind::IssueComment:
            a.m[kIssueComments] += 1;
            a.issue_comment_len_sum += static_cast<double>(e.body_length);
            a.m[kRefsIssue] += e.references;
            for (const auto& login : e.mentions) {
                acc[key_for(e, login, period)].m[kMentionedIssue] += 1;
            }
            break;
        case ActionKind::PrComment:
            a.m[kPrComments] += 1;
            a.pr_comment_len_sum += static_cast<double>(e.body_length);
            a.m[kRefsPr] += e.references;
            for (const auto& login : e.mentions) {
                acc[key_for(e, login, period)].m[kMentionedPr] += 1;
            }
            break;
        case ActionKind::IssueLabelChange:
            a.m[kIssueLabels] += 1;
            break;
        case ActionKind::PrLabelChange:
            a.m[kPrLabels] += 1;
            break;
        case ActionKind::IssueClosed:
            a.m[kIssuesClosed] += 1;
            break;
        case ActionKind::PrClosed:
            a.m[kPrsClosed] += 1;
            break;
        }
    }

    MetricsMatrix matrix;
    matrix.rows.reserve(acc.size());
    for (auto& [key, a] : acc) {
        MetricsRow row;
        row.key = key;
        row.m = a.m;
        row.m[kFiles] = static_cast<double>(a.files.size());
        if (a.m[kPrsMade] > 0) {
            row.m[kAvgPrDescLen] = a.pr_desc_len_sum / a.m[kPrsMade];
        }
        if (a.m[kIssuesReported] > 0) {
            row.m[kAvgIssueDescLen] = a.issue_desc_len_sum / a.m[kIssuesReported];
        }
        if (a.m[kIssueComments] > 0) {
            row.m[kAvgIssueCommentLen] =
                a.issue_comment_len_sum / a.m[kIssueComments];
        }
        if (a.m[kPrComments] > 0) {
            row.m[kAvgPrCommentLen] = a.pr_comment_len_sum / a.m[kPrComments];
        }
        if (row.any_nonzero()) {
            matrix.rows.push_back(std::move(row));
        }
    }
    // std::map iteration already yields canonical (project, login, period)
    // key order.
    return matrix;
}

void export_matrix(const MetricsMatrix& matrix, const std::filesystem::path& path) {
    CsvWriter csv(path);
    std::vector<std::string> header = {"owner", "repo", "login", "period"};
    for (const char* name : kMetricNames) header.emplace_back(name);
    csv.row(header);
    for (const auto& row : matrix.rows) {
        std::vector<std::string> fields = {row.key.owner, row.key.name,
                                           row.key.login,
                                           std::to_string(row.key.period)};
        for (double v : row.m) fields.push_back(format_double(v));
        csv.row(fields);
    }
    csv.close();
}

MetricsMatrix import_matrix(const std::filesystem::path& path) {
    const auto rows = read_csv(path);
    if (rows.empty()) throw IoError("empty metrics file: " + path.string());
    const auto& header = rows.front();
    if (header.size() != 4 + kMetricCount || header[0] != "owner") {
        throw IoError("unexpected metrics header in " + path.string());
    }
    for (int j = 0; j < kMetricCount; ++j) {
        if (header[4 + j] != kMetricNames[j]) {
            throw IoError("metrics column mismatch: expected " +
                          std::string(kMetricNames[j]) + ", got " + header[4 + j]);
        }
    }
    MetricsMatrix matrix;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& fields = rows[i];
        if (fields.size() != 4 + kMetricCount) {
            throw IoError("short metrics row in " + path.string());
        }
        MetricsRow row;
        row.key = {fields[0], fields[1], fields[2],
                   static_cast<int>(parse_int(fields[3]))};
        for (int j = 0; j < kMetricCount; ++j) {
            row.m[j] = parse_double(fields[4 + j]);
        }
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

} // namespace rolemine
