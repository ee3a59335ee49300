#pragma once

#include "rolemine/config.hpp"
#include "rolemine/dynamics.hpp"
#include "rolemine/github_client.hpp"
#include "rolemine/metrics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rolemine {

struct NoDataError : Error {
    using Error::Error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int auth = 3;
inline constexpr int no_data = 4;
inline constexpr int numerical = 5;
} // namespace exit_code

int exit_code_for(const std::exception& e);

/// Fetches every configured project into the store.
FetchStats run_fetch(const RunConfig& config);

/// Store -> normalized, bot-filtered, in-window events for the configured
/// projects (all projects in the store when none are configured).
std::vector<ActionEvent> load_events(const RunConfig& config, EventStore& store);

/// Computes the metrics matrix from the store and writes metrics.csv into
/// the output directory.
MetricsMatrix run_metrics(const RunConfig& config);

struct AnalyzeResult {
    std::size_t data_points = 0;
    int factors = 0;
    int active_roles = 0;
    int supporting_roles = 0;
    std::size_t trajectories = 0;
    std::vector<std::string> artifacts; // file names within output_dir
};

/// Full pipeline: metrics, factor extraction, clustering, role dynamics.
/// Writes the artifact set plus a checksum manifest into the output
/// directory; partial outputs are removed when a stage fails. Set
/// metrics_csv to reuse a previously exported matrix instead of reading
/// the event store.
AnalyzeResult run_analyze(const RunConfig& config,
                          const std::optional<std::filesystem::path>& metrics_csv =
                              std::nullopt);

/// Renders the artifact directory as a human-readable summary. Format is
/// "text" or "markdown".
std::string run_report(const std::filesystem::path& artifact_dir,
                       const std::string& format);

} // namespace rolemine
