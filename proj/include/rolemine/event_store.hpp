#pragma once

#include "rolemine/event.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace rolemine {

/// Per-endpoint fetch progress, persisted so an interrupted run can resume.
struct EndpointSync {
    long long pages_done = 0;
    bool complete = false;
    std::string last_fetch; // ISO 8601, informational only
};

/// Append-only on-disk record set: one JSON object per line, one file per
/// (project, action kind). Event identity is the source API node id;
/// re-adding an existing id is a no-op. Files are rewritten in canonical
/// (timestamp, id) order on save, so two stores with equal content are
/// byte-identical.
class EventStore {
public:
    explicit EventStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    /// Reads every record under root. Missing directory is an empty store.
    void load();

    /// Inserts if the (project, kind, id) triple is new. Returns true when
    /// the event was added.
    bool add(const ProjectRef& project, const StoredEvent& event);

    bool contains(const ProjectRef& project, ActionKind kind,
                  const std::string& id) const;

    /// Canonically sorted rewrite of all dirty project directories.
    void save();

    std::vector<ProjectRef> projects() const;

    /// All raw records for a project, sorted by (ts, id).
    std::vector<StoredEvent> events(const ProjectRef& project) const;

    std::size_t size() const;

    EndpointSync sync_state(const ProjectRef& project,
                            const std::string& endpoint) const;
    void set_sync_state(const ProjectRef& project, const std::string& endpoint,
                        const EndpointSync& sync);

private:
    using KindMap = std::map<ActionKind, std::map<std::string, StoredEvent>>;

    std::filesystem::path project_dir(const ProjectRef& p) const;
    void load_project(const ProjectRef& p, const std::filesystem::path& dir);
    void save_project(const ProjectRef& p);

    std::filesystem::path root_;
    std::map<ProjectRef, KindMap> events_;
    std::map<ProjectRef, std::map<std::string, EndpointSync>> sync_;
    std::map<ProjectRef, bool> dirty_;
};

} // namespace rolemine
