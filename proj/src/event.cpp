#include "rolemine/event.hpp"

#include "rolemine/body_parse.hpp"
#include "rolemine/civil_time.hpp"
#include "rolemine/errors.hpp"

#include <nlohmann/json.hpp>

namespace rolemine {

const char* to_string(ActionKind kind) {
    switch (kind) {
    case ActionKind::Commit: return "commit";
    case ActionKind::IssueOpened: return "issue_opened";
    case ActionKind::IssueComment: return "issue_comment";
    case ActionKind::PrOpened: return "pr_opened";
    case ActionKind::PrComment: return "pr_comment";
    case ActionKind::IssueLabelChange: return "issue_label_change";
    case ActionKind::PrLabelChange: return "pr_label_change";
    case ActionKind::IssueClosed: return "issue_closed";
    case ActionKind::PrClosed: return "pr_closed";
    }
    return "unknown";
}

ActionKind action_kind_from_string(const std::string& s) {
    for (int i = 0; i < kActionKindCount; ++i) {
        const auto kind = static_cast<ActionKind>(i);
        if (s == to_string(kind)) return kind;
    }
    throw Error("unknown action kind: " + s);
}

nlohmann::json StoredEvent::to_json() const {
    nlohmann::json j{
        {"id", id},
        {"kind", to_string(kind)},
        {"actor", actor},
        {"bot", actor_bot},
        {"ts", format_iso8601_utc(ts)},
    };
    if (kind == ActionKind::Commit) {
        j["loc"] = loc_changed;
        j["files"] = files;
    }
    if (kind == ActionKind::IssueOpened || kind == ActionKind::PrOpened ||
        kind == ActionKind::IssueComment || kind == ActionKind::PrComment) {
        j["body"] = body;
    }
    return j;
}

StoredEvent StoredEvent::from_json(const nlohmann::json& j) {
    StoredEvent e;
    e.id = j.at("id").get<std::string>();
    e.kind = action_kind_from_string(j.at("kind").get<std::string>());
    e.actor = j.at("actor").get<std::string>();
    e.actor_bot = j.value("bot", false);
    e.ts = parse_iso8601_utc(j.at("ts").get<std::string>());
    e.loc_changed = j.value("loc", 0LL);
    if (j.contains("files")) e.files = j["files"].get<std::vector<std::string>>();
    e.body = j.value("body", std::string{});
    return e;
}

std::vector<ActionEvent> normalize_events(const ProjectRef& project,
                                          const std::vector<StoredEvent>& raw,
                                          const std::set<std::string>& known_logins) {
    std::vector<ActionEvent> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
        ActionEvent e;
        e.project = project;
        e.actor = r.actor;
        e.actor_bot = r.actor_bot;
        e.ts = r.ts;
        e.kind = r.kind;
        e.id = r.id;
        e.loc_changed = r.loc_changed;
        e.files = r.files;
        BodyFacts facts = parse_body(r.body, known_logins);
        e.body_length = facts.length;
        e.mentions = std::move(facts.mentions);
        e.references = facts.references;
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace rolemine
