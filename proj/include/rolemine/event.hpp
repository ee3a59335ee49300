#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rolemine {

struct ProjectRef {
    std::string owner;
    std::string name;

    auto operator<=>(const ProjectRef&) const = default;

    /// "owner/name" for display, "owner__name" for filesystem paths.
    std::string full_name() const { return owner + "/" + name; }
    std::string slug() const { return owner + "__" + name; }
};

enum class ActionKind {
    Commit,
    IssueOpened,
    IssueComment,
    PrOpened,
    PrComment,
    IssueLabelChange,
    PrLabelChange,
    IssueClosed,
    PrClosed,
};

inline constexpr int kActionKindCount = 9;

const char* to_string(ActionKind kind);
ActionKind action_kind_from_string(const std::string& s);

/// Raw persisted record: what the source API gave us, minus noise.
/// Bodies are kept verbatim so mention/reference extraction can run
/// against the full set of known logins at load time.
struct StoredEvent {
    std::string id; // source API node id, dedup key
    ActionKind kind = ActionKind::Commit;
    std::string actor;
    bool actor_bot = false;
    std::int64_t ts = 0;
    long long loc_changed = 0;      // Commit
    std::vector<std::string> files; // Commit
    std::string body;               // opened / comment kinds

    nlohmann::json to_json() const;
    static StoredEvent from_json(const nlohmann::json& j);
};

/// Normalized analysis event: bodies reduced to length / mentions /
/// reference counts.
struct ActionEvent {
    ProjectRef project;
    std::string actor;
    bool actor_bot = false;
    std::int64_t ts = 0;
    ActionKind kind = ActionKind::Commit;
    std::string id;
    long long loc_changed = 0;
    std::vector<std::string> files;
    long long body_length = 0;
    std::vector<std::string> mentions;
    int references = 0;
};

/// Turns raw records into ActionEvents, parsing bodies against the given
/// login set. Order is preserved.
std::vector<ActionEvent> normalize_events(const ProjectRef& project,
                                          const std::vector<StoredEvent>& raw,
                                          const std::set<std::string>& known_logins);

} // namespace rolemine
