// Command-line front end: fetch, metrics, analyze, report.

#include "rolemine/log.hpp"
#include "rolemine/pipeline.hpp"
#include "rolemine/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return rolemine::exit_code_for(e);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mine contributor activity from software repositories into "
                 "activity factors, role clusters, and role-change dynamics"};
    app.set_version_flag("--version", rolemine::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "chatty progress output");

    auto* fetch = app.add_subcommand("fetch", "download project activity into "
                                              "the event store");
    fetch->add_option("--config", config_path, "run configuration (JSON)")
        ->required();

    auto* metrics = app.add_subcommand(
        "metrics", "compute the per-quarter activity metrics matrix");
    metrics->add_option("--config", config_path, "run configuration (JSON)")
        ->required();

    auto* analyze = app.add_subcommand(
        "analyze", "run the full pipeline and write the artifact set");
    analyze->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    std::string metrics_csv;
    analyze->add_option("--from-metrics", metrics_csv,
                        "reuse a previously exported metrics.csv instead of "
                        "reading the event store");

    auto* report = app.add_subcommand("report",
                                      "summarize an artifact directory");
    std::string artifact_dir;
    std::string format = "text";
    report->add_option("artifacts", artifact_dir, "artifact directory")
        ->required();
    report->add_option("--format", format, "text or markdown")
        ->check(CLI::IsMember({"text", "markdown"}));

    CLI11_PARSE(app, argc, argv);
    rolemine::set_verbose(verbose);

    if (*fetch) {
        return guarded([&] {
            const auto config = rolemine::RunConfig::from_file(config_path);
            const auto stats = rolemine::run_fetch(config);
            std::cout << stats.added << " new events (" << stats.seen
                      << " records inspected, " << stats.requests
                      << " requests)\n";
            if (stats.dropped_unattributed > 0) {
                std::cout << stats.dropped_unattributed
                          << " commits dropped without a resolvable author\n";
            }
            return rolemine::exit_code::ok;
        });
    }
    if (*metrics) {
        return guarded([&] {
            const auto config = rolemine::RunConfig::from_file(config_path);
            const auto matrix = rolemine::run_metrics(config);
            std::cout << matrix.rows.size() << " data points -> "
                      << (config.output_dir / "metrics.csv").string() << '\n';
            return rolemine::exit_code::ok;
        });
    }
    if (*analyze) {
        return guarded([&] {
            const auto config = rolemine::RunConfig::from_file(config_path);
            std::optional<std::filesystem::path> from;
            if (!metrics_csv.empty()) from = metrics_csv;
            const auto result = rolemine::run_analyze(config, from);
            std::cout << result.data_points << " data points, "
                      << result.factors << " factors, " << result.active_roles
                      << " active + " << result.supporting_roles
                      << " supporting roles, " << result.trajectories
                      << " trajectories\nartifacts in "
                      << config.output_dir.string() << '\n';
            return rolemine::exit_code::ok;
        });
    }
    return guarded([&] {
        std::cout << rolemine::run_report(artifact_dir, format);
        return rolemine::exit_code::ok;
    });
}
