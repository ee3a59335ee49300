#include "rolemine/config.hpp"

#include "rolemine/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>

namespace rolemine {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& context) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) {
            throw ConfigError("unknown config key '" + key + "' in " + context);
        }
    }
}

LabelRule rule_from_json(const json& j) {
    reject_unknown_keys(j, {"priority", "group", "select", "factor", "label"},
                        "labels.roles[]");
    LabelRule rule;
    rule.priority = j.at("priority").get<int>();
    rule.group = group_from_string(j.at("group").get<std::string>());
    rule.select = j.at("select").get<std::string>();
    rule.factor = j.value("factor", std::string{});
    rule.label = j.at("label").get<std::string>();
    if (rule.select != "max_coord" && rule.select != "min_coord" &&
        rule.select != "max_norm" && rule.select != "min_norm") {
        throw ConfigError("unknown label rule selector: " + rule.select);
    }
    if ((rule.select == "max_coord" || rule.select == "min_coord") &&
        rule.factor.empty()) {
        throw ConfigError("label rule '" + rule.label + "' needs a factor");
    }
    return rule;
}

json rule_to_json(const LabelRule& rule) {
    json j{{"priority", rule.priority},
           {"group", to_string(rule.group)},
           {"select", rule.select},
           {"label", rule.label}};
    if (!rule.factor.empty()) j["factor"] = rule.factor;
    return j;
}

} // namespace

LabelConfig default_label_config() {
    LabelConfig config;
    config.activities = default_activity_labels();
    config.roles = {
        {1, Group::Active, "max_coord", "Code Contribution", "Intense Code Contributor"},
        {2, Group::Active, "max_coord", "Knowledge Sharing", "Coordinator"},
        {3, Group::Active, "min_coord", "Issue Reporting", "Core Developer"},
        {4, Group::Active, "max_norm", "", "All-Rounder"},
        {5, Group::Supporting, "min_norm", "", "Rare Contributor"},
        {6, Group::Supporting, "max_coord", "Issue Reporting", "Engaged Issue Reporter"},
        {7, Group::Supporting, "max_coord", "Issue Reporting", "Occasional Issue Reporter"},
        {8, Group::Supporting, "max_coord", "Progress Control", "Progress Controller"},
        {9, Group::Supporting, "max_coord", "Code Tweaking", "Issue Fixer"},
    };
    return config;
}

RunConfig RunConfig::from_json(const json& j) {
    reject_unknown_keys(j,
                        {"projects", "window", "store_dir", "output_dir",
                         "bot_denylist", "alias_file", "api", "factor",
                         "cluster", "dynamics", "labels"},
                        "config");
    RunConfig config;
    config.labels = default_label_config();

    if (j.contains("projects")) {
        for (const auto& p : j.at("projects")) {
            reject_unknown_keys(p, {"owner", "name"}, "projects[]");
            ProjectRef ref{p.at("owner").get<std::string>(),
                           p.at("name").get<std::string>()};
            if (ref.owner.empty() || ref.name.empty()) {
                throw ConfigError("project owner and name must be non-empty");
            }
            for (const auto& existing : config.projects) {
                if (existing == ref) {
                    throw ConfigError("duplicate project " + ref.full_name());
                }
            }
            config.projects.push_back(std::move(ref));
        }
    }
    if (j.contains("window")) {
        const auto& w = j.at("window");
        reject_unknown_keys(w, {"start", "end"}, "window");
        config.window = TimeWindow::from_iso(w.at("start").get<std::string>(),
                                             w.at("end").get<std::string>());
    }
    if (j.contains("store_dir")) {
        config.store_dir = j.at("store_dir").get<std::string>();
    }
    if (j.contains("output_dir")) {
        config.output_dir = j.at("output_dir").get<std::string>();
    }
    if (j.contains("bot_denylist")) {
        for (const auto& login : j.at("bot_denylist")) {
            config.bot_denylist.insert(login.get<std::string>());
        }
    }
    if (j.contains("alias_file")) {
        config.alias_file = j.at("alias_file").get<std::string>();
    }
    if (j.contains("api")) {
        const auto& a = j.at("api");
        reject_unknown_keys(a,
                            {"base_url", "token_env", "per_page", "max_workers",
                             "min_request_interval_ms", "max_retries"},
                            "api");
        config.api.base_url = a.value("base_url", config.api.base_url);
        config.api.token_env = a.value("token_env", config.api.token_env);
        config.api.per_page = a.value("per_page", config.api.per_page);
        config.api.max_workers = a.value("max_workers", config.api.max_workers);
        config.api.min_request_interval_ms =
            a.value("min_request_interval_ms", config.api.min_request_interval_ms);
        config.api.max_retries = a.value("max_retries", config.api.max_retries);
        if (config.api.per_page < 1 || config.api.per_page > 100) {
            throw ConfigError("api.per_page must be in 1..100");
        }
        if (config.api.max_workers < 1) {
            throw ConfigError("api.max_workers must be positive");
        }
    }
    if (j.contains("factor")) {
        const auto& f = j.at("factor");
        reject_unknown_keys(
            f, {"tol", "max_iter", "rotation_max_iter", "rotation_tol"}, "factor");
        config.factor.tol = f.value("tol", config.factor.tol);
        config.factor.max_iter = f.value("max_iter", config.factor.max_iter);
        config.factor.rotation_max_iter =
            f.value("rotation_max_iter", config.factor.rotation_max_iter);
        config.factor.rotation_tol =
            f.value("rotation_tol", config.factor.rotation_tol);
        if (config.factor.tol <= 0 || config.factor.max_iter < 1) {
            throw ConfigError("factor.tol and factor.max_iter must be positive");
        }
    }
    if (j.contains("cluster")) {
        const auto& c = j.at("cluster");
        reject_unknown_keys(c,
                            {"active_k", "supporting_k", "silhouette_selection",
                             "k_min", "k_max", "silhouette_exact_limit",
                             "silhouette_subsample", "seed"},
                            "cluster");
        config.cluster.active_k = c.value("active_k", config.cluster.active_k);
        config.cluster.supporting_k =
            c.value("supporting_k", config.cluster.supporting_k);
        config.cluster.silhouette_selection =
            c.value("silhouette_selection", config.cluster.silhouette_selection);
        config.cluster.k_min = c.value("k_min", config.cluster.k_min);
        config.cluster.k_max = c.value("k_max", config.cluster.k_max);
        config.cluster.silhouette_exact_limit =
            c.value("silhouette_exact_limit", config.cluster.silhouette_exact_limit);
        config.cluster.silhouette_subsample =
            c.value("silhouette_subsample", config.cluster.silhouette_subsample);
        config.cluster.seed = c.value("seed", config.cluster.seed);
        if (config.cluster.active_k < 1 || config.cluster.supporting_k < 1) {
            throw ConfigError("cluster counts must be positive");
        }
        if (config.cluster.k_min > config.cluster.k_max) {
            throw ConfigError("cluster.k_min must not exceed cluster.k_max");
        }
    }
    if (j.contains("dynamics")) {
        const auto& d = j.at("dynamics");
        reject_unknown_keys(d, {"skip_absent_distance", "histogram_bins"},
                            "dynamics");
        config.dynamics.skip_absent_distance =
            d.value("skip_absent_distance", config.dynamics.skip_absent_distance);
        config.dynamics.histogram_bins =
            d.value("histogram_bins", config.dynamics.histogram_bins);
        if (config.dynamics.histogram_bins < 1) {
            throw ConfigError("dynamics.histogram_bins must be positive");
        }
    }
    if (j.contains("labels")) {
        const auto& l = j.at("labels");
        reject_unknown_keys(l, {"activities", "roles", "rare_role_label"},
                            "labels");
        if (l.contains("activities")) {
            config.labels.activities =
                l.at("activities").get<std::vector<std::string>>();
        }
        if (l.contains("roles")) {
            config.labels.roles.clear();
            for (const auto& r : l.at("roles")) {
                config.labels.roles.push_back(rule_from_json(r));
            }
        }
        config.labels.rare_role_label =
            l.value("rare_role_label", config.labels.rare_role_label);
    }
    return config;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " +
                          e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError("config error in " + path.string() + ": " + e.what());
    }
}

json RunConfig::to_json() const {
    json projects_json = json::array();
    for (const auto& p : projects) {
        projects_json.push_back({{"owner", p.owner}, {"name", p.name}});
    }
    json rules = json::array();
    for (const auto& r : labels.roles) rules.push_back(rule_to_json(r));
    return json{
        {"projects", projects_json},
        {"window",
         {{"start", format_iso8601_utc(window.start())},
          {"end", format_iso8601_utc(window.end())}}},
        {"store_dir", store_dir.string()},
        {"output_dir", output_dir.string()},
        {"bot_denylist", bot_denylist},
        {"alias_file", alias_file.string()},
        {"api",
         {{"base_url", api.base_url},
          {"token_env", api.token_env},
          {"per_page", api.per_page},
          {"max_workers", api.max_workers},
          {"min_request_interval_ms", api.min_request_interval_ms},
          {"max_retries", api.max_retries}}},
        {"factor",
         {{"tol", factor.tol},
          {"max_iter", factor.max_iter},
          {"rotation_max_iter", factor.rotation_max_iter},
          {"rotation_tol", factor.rotation_tol}}},
        {"cluster",
         {{"active_k", cluster.active_k},
          {"supporting_k", cluster.supporting_k},
          {"silhouette_selection", cluster.silhouette_selection},
          {"k_min", cluster.k_min},
          {"k_max", cluster.k_max},
          {"silhouette_exact_limit", cluster.silhouette_exact_limit},
          {"silhouette_subsample", cluster.silhouette_subsample},
          {"seed", cluster.seed}}},
        {"dynamics",
         {{"skip_absent_distance", dynamics.skip_absent_distance},
          {"histogram_bins", dynamics.histogram_bins}}},
        {"labels",
         {{"activities", labels.activities},
          {"roles", rules},
          {"rare_role_label", labels.rare_role_label}}},
    };
}

std::map<std::string, std::string> load_aliases(const RunConfig& config) {
    std::map<std::string, std::string> aliases;
    if (config.alias_file.empty()) return aliases;
    std::ifstream in(config.alias_file);
    if (!in) {
        throw ConfigError("cannot read alias file " + config.alias_file.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("alias file parse error: " + std::string(e.what()));
    }
    for (const auto& [email, login] : j.items()) {
        aliases[email] = login.get<std::string>();
    }
    return aliases;
}

} // namespace rolemine
