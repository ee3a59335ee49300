#include "rolemine/pipeline.hpp"

#include "rolemine/bot_filter.hpp"
#include "rolemine/csv.hpp"
#include "rolemine/log.hpp"
#include "rolemine/manifest.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

namespace rolemine {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return exit_code::config;
    if (dynamic_cast<const AuthError*>(&e)) return exit_code::auth;
    if (dynamic_cast<const NoDataError*>(&e)) return exit_code::no_data;
    if (dynamic_cast<const DegenerateMatrixError*>(&e) ||
        dynamic_cast<const NoFactorsRetainedError*>(&e) ||
        dynamic_cast<const SingularCorrelationError*>(&e) ||
        dynamic_cast<const InvalidCandidateRangeError*>(&e)) {
        return exit_code::numerical;
    }
    return exit_code::failure;
}

FetchStats run_fetch(const RunConfig& config) {
    if (config.projects.empty()) {
        throw ConfigError("fetch requires at least one configured project");
    }
    EventStore store(config.store_dir);
    store.load();

    FetchOptions options;
    options.base_url = config.api.base_url;
    options.per_page = config.api.per_page;
    options.max_workers = config.api.max_workers;
    options.max_retries = config.api.max_retries;
    options.aliases = load_aliases(config);
    if (const char* token = std::getenv(config.api.token_env.c_str())) {
        options.token = token;
    }
    RateLimiter limiter(
        std::chrono::milliseconds(config.api.min_request_interval_ms));

    FetchStats total;
    for (const auto& project : config.projects) {
        const FetchStats stats =
            fetch_project(store, project, config.window, options, limiter);
        total.added += stats.added;
        total.seen += stats.seen;
        total.requests += stats.requests;
        total.dropped_unattributed += stats.dropped_unattributed;
    }
    return total;
}

std::vector<ActionEvent> load_events(const RunConfig& config, EventStore& store) {
    std::vector<ProjectRef> projects =
        config.projects.empty() ? store.projects() : config.projects;

    std::vector<ActionEvent> all;
    for (const auto& project : projects) {
        std::vector<StoredEvent> raw = store.events(project);
        std::erase_if(raw, [&](const StoredEvent& e) {
            return !config.window.contains(e.ts);
        });
        // Mentions only resolve against logins that act in this project,
        // bots excluded so they never accrue passive rows.
        std::set<std::string> known_logins;
        for (const auto& e : raw) {
            if (!is_bot(e.actor, e.actor_bot, config.bot_denylist)) {
                known_logins.insert(e.actor);
            }
        }
        std::vector<ActionEvent> normalized =
            normalize_events(project, raw, known_logins);
        normalized = filter_bots(std::move(normalized), config.bot_denylist);
        all.insert(all.end(), std::make_move_iterator(normalized.begin()),
                   std::make_move_iterator(normalized.end()));
    }
    return all;
}

MetricsMatrix run_metrics(const RunConfig& config) {
    EventStore store(config.store_dir);
    store.load();
    const std::vector<ActionEvent> events = load_events(config, store);
    const MetricsMatrix matrix = compute_metrics(events, config.window);
    fs::create_directories(config.output_dir);
    export_matrix(matrix, config.output_dir / "metrics.csv");
    return matrix;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

void export_transitions(const TransitionMatrix& m, const fs::path& path) {
    CsvWriter csv(path);
    std::vector<std::string> header{"from"};
    for (const auto& label : m.labels) header.push_back(label);
    csv.row(header);
    for (Eigen::Index i = 0; i < m.counts.rows(); ++i) {
        std::vector<std::string> fields{m.labels[static_cast<size_t>(i)]};
        for (Eigen::Index j = 0; j < m.counts.cols(); ++j) {
            fields.push_back(std::to_string(m.counts(i, j)));
        }
        csv.row(fields);
    }
    csv.close();
}

struct TaggedTrajectory {
    const RoleTrajectory* trajectory;
    PopulationTag tag;
};

} // namespace

AnalyzeResult run_analyze(const RunConfig& config,
                          const std::optional<fs::path>& metrics_csv) {
    AnalyzeResult result;
    const fs::path out = config.output_dir;
    fs::create_directories(out);

    std::vector<std::string> written;
    const auto track = [&](const std::string& name) {
        written.push_back(name);
        return out / name;
    };

    try {
        // Stage 1: metrics.
        MetricsMatrix matrix;
        if (metrics_csv) {
            matrix = import_matrix(*metrics_csv);
        } else {
            EventStore store(config.store_dir);
            store.load();
            matrix = compute_metrics(load_events(config, store), config.window);
        }
        if (matrix.empty()) {
            throw NoDataError("no data points: no contributor activity in window");
        }
        result.data_points = matrix.rows.size();
        export_matrix(matrix, track("metrics.csv"));

        // Stage 2: activity dimensions.
        std::vector<std::string> column_names(kMetricNames.begin(),
                                              kMetricNames.end());
        const FactorModel model = fit_factor_model(
            matrix.values(), column_names, config.factor, config.labels.activities);
        result.factors = model.k;
        export_loadings(model, track("loadings.csv"));
        export_phi(model, track("phi.csv"));
        {
            json j = model.to_json();
            j["config"] = config.to_json();
            write_text(track("model.json"), j.dump(2) + "\n");
        }

        // Stage 3: role clusters.
        std::vector<RowKey> keys;
        keys.reserve(matrix.rows.size());
        for (const auto& row : matrix.rows) keys.push_back(row.key);

        const Dendrogram tree{static_cast<int>(model.scores.rows()),
                              ward_cluster(model.scores)};
        {
            json j = tree.to_json(keys);
            j["config"] = config.to_json();
            write_text(track("dendrogram.json"), j.dump() + "\n");
        }

        const GroupSplit split = split_groups(tree, model.scores);
        CutOptions cut_opts;
        cut_opts.k_min = config.cluster.k_min;
        cut_opts.k_max = config.cluster.k_max;
        cut_opts.exact_limit = config.cluster.silhouette_exact_limit;
        cut_opts.subsample = config.cluster.silhouette_subsample;
        cut_opts.seed = config.cluster.seed;

        CutOptions active_opts = cut_opts;
        CutOptions supporting_opts = cut_opts;
        if (!config.cluster.silhouette_selection) {
            active_opts.forced_k = config.cluster.active_k;
            supporting_opts.forced_k = config.cluster.supporting_k;
        } else {
            active_opts.k_max = std::min(
                active_opts.k_max, tree.subtree_size(split.active_root));
            active_opts.k_min = std::min(active_opts.k_min, active_opts.k_max);
            supporting_opts.k_max = std::min(
                supporting_opts.k_max, tree.subtree_size(split.supporting_root));
            supporting_opts.k_min =
                std::min(supporting_opts.k_min, supporting_opts.k_max);
        }
        const CutSelection active =
            cut_roles(tree, split.active_root, model.scores, active_opts);
        const CutSelection supporting =
            cut_roles(tree, split.supporting_root, model.scores, supporting_opts);
        result.active_roles = active.k;
        result.supporting_roles = supporting.k;

        const RoleModel roles =
            build_role_model(split, active, supporting, model.scores, keys,
                             model.factor_labels, config.labels.roles);
        {
            json j = roles.to_json();
            j["config"] = config.to_json();
            json candidates = json::array();
            const auto dump_candidates = [&](const CutSelection& cut,
                                             const char* group) {
                for (const auto& c : cut.candidates) {
                    candidates.push_back({{"group", group},
                                          {"k", c.k},
                                          {"mean_silhouette", c.mean},
                                          {"evaluated", c.evaluated}});
                }
            };
            dump_candidates(active, "active");
            dump_candidates(supporting, "supporting");
            j["silhouette_candidates"] = candidates;
            write_text(track("roles.json"), j.dump() + "\n");
        }
        export_centroids(roles, track("centroids.csv"));

        // Stage 4: dynamics.
        const int periods = config.window.periods();
        const std::vector<RoleTrajectory> trajectories =
            build_trajectories(roles, periods);
        result.trajectories = trajectories.size();

        std::set<int> rare_ids;
        for (const auto& c : roles.clusters) {
            if (c.label == config.labels.rare_role_label) rare_ids.insert(c.id);
        }

        std::vector<TaggedTrajectory> tagged;
        tagged.reserve(trajectories.size());
        for (const auto& t : trajectories) {
            tagged.push_back({&t, tag_population(t, roles, rare_ids)});
        }

        {
            std::string lines;
            for (const auto& [t, tag] : tagged) {
                json roles_json = json::array();
                for (int role : t->roles) {
                    if (role == kAbsentRole) {
                        roles_json.push_back(nullptr);
                    } else {
                        roles_json.push_back(role);
                    }
                }
                lines += json{{"owner", t->owner},
                              {"repo", t->name},
                              {"login", t->login},
                              {"population", to_string(tag.population)},
                              {"excluded_constant", tag.excluded_constant},
                              {"roles", roles_json}}
                             .dump();
                lines += '\n';
            }
            write_text(track("trajectories.jsonl"), lines);
        }

        const auto population_slice = [&](Population p) {
            std::vector<RoleTrajectory> slice;
            for (const auto& [t, tag] : tagged) {
                if (tag.population == p && !tag.excluded_constant) {
                    slice.push_back(*t);
                }
            }
            return slice;
        };
        export_transitions(
            transition_matrix(population_slice(Population::SupportingOnly),
                              Population::SupportingOnly, roles),
            track("transitions_supporting.csv"));
        export_transitions(
            transition_matrix(population_slice(Population::EverActive),
                              Population::EverActive, roles),
            track("transitions_active.csv"));

        std::vector<double> ever_active_scores;
        {
            CsvWriter csv(track("rci.csv"));
            csv.row({"owner", "repo", "login", "population", "rci"});
            for (const auto& [t, tag] : tagged) {
                if (tag.excluded_constant || tag.population == Population::RareOnly) {
                    continue;
                }
                const auto score =
                    rci(*t, roles, config.dynamics.skip_absent_distance);
                if (!score) continue;
                csv.row({t->owner, t->name, t->login, to_string(tag.population),
                         format_double(*score)});
                if (tag.population == Population::EverActive) {
                    ever_active_scores.push_back(*score);
                }
            }
            csv.close();
        }
        {
            CsvWriter hist(track("rci_hist.csv"));
            hist.row({"bin_lo", "bin_hi", "count"});
            CsvWriter summary(track("rci_summary.csv"));
            summary.row({"count", "median", "q1", "q3"});
            if (!ever_active_scores.empty()) {
                const RciSummary s = rci_summary(ever_active_scores,
                                                 config.dynamics.histogram_bins);
                for (const auto& bin : s.bins) {
                    hist.row({format_double(bin.lo), format_double(bin.hi),
                              std::to_string(bin.count)});
                }
                summary.row({std::to_string(s.count), format_double(s.median),
                             format_double(s.q1), format_double(s.q3)});
            } else {
                log_warn("no role-change scores in the ever-active population");
            }
            hist.close();
            summary.close();
        }

        const json manifest =
            build_manifest(config.to_json(), out, written);
        write_text(out / "manifest.json", manifest.dump(2) + "\n");
        written.push_back("manifest.json");
        result.artifacts = written;
        return result;
    } catch (...) {
        for (const auto& name : written) {
            std::error_code ec;
            fs::remove(out / name, ec);
        }
        throw;
    }
}

} // namespace rolemine
