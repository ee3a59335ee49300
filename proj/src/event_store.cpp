#include "rolemine/event_store.hpp"

#include "rolemine/errors.hpp"
#include "rolemine/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace rolemine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ProjectRef project_from_slug(const std::string& slug) {
    const auto sep = slug.find("__");
    if (sep == std::string::npos || sep == 0 || sep + 2 >= slug.size()) {
        throw IoError("malformed project directory name: " + slug);
    }
    return ProjectRef{slug.substr(0, sep), slug.substr(sep + 2)};
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << text;
    }
    fs::rename(tmp, path);
}

} // namespace

EventStore::EventStore(fs::path root) : root_(std::move(root)) {}

void EventStore::load() {
    events_.clear();
    sync_.clear();
    dirty_.clear();
    if (!fs::exists(root_)) return;

    const fs::path meta_path = root_ / "meta.json";
    if (fs::exists(meta_path)) {
        std::ifstream in(meta_path);
        json meta = json::parse(in);
        const int version = meta.value("schema_version", 0);
        if (version != kStoreSchemaVersion) {
            throw IoError("event store schema_version " +
                          std::to_string(version) + " unsupported (expected " +
                          std::to_string(kStoreSchemaVersion) + ")");
        }
    }

    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root_)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
        load_project(project_from_slug(dir.filename().string()), dir);
    }
}

void EventStore::load_project(const ProjectRef& p, const fs::path& dir) {
    auto& kinds = events_[p];
    for (int i = 0; i < kActionKindCount; ++i) {
        const auto kind = static_cast<ActionKind>(i);
        const fs::path file = dir / (std::string(to_string(kind)) + ".jsonl");
        if (!fs::exists(file)) continue;
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            StoredEvent e = StoredEvent::from_json(json::parse(line));
            kinds[kind].emplace(e.id, std::move(e));
        }
    }
    const fs::path sync_path = dir / "sync.json";
    if (fs::exists(sync_path)) {
        std::ifstream in(sync_path);
        json j = json::parse(in);
        for (const auto& [endpoint, s] : j.items()) {
            EndpointSync sync;
            sync.pages_done = s.value("pages_done", 0LL);
            sync.complete = s.value("complete", false);
            sync.last_fetch = s.value("last_fetch", std::string{});
            sync_[p][endpoint] = sync;
        }
    }
}

bool EventStore::add(const ProjectRef& project, const StoredEvent& event) {
    auto& by_id = events_[project][event.kind];
    const auto [it, inserted] = by_id.emplace(event.id, event);
    (void)it;
    if (inserted) dirty_[project] = true;
    return inserted;
}

bool EventStore::contains(const ProjectRef& project, ActionKind kind,
                          const std::string& id) const {
    const auto pit = events_.find(project);
    if (pit == events_.end()) return false;
    const auto kit = pit->second.find(kind);
    return kit != pit->second.end() && kit->second.count(id) > 0;
}

void EventStore::save() {
    fs::create_directories(root_);
    write_text_atomic(root_ / "meta.json",
                      json{{"schema_version", kStoreSchemaVersion}}.dump() + "\n");
    for (const auto& [project, kinds] : events_) {
        (void)kinds;
        save_project(project);
    }
}

void EventStore::save_project(const ProjectRef& p) {
    const fs::path dir = project_dir(p);
    fs::create_directories(dir);

    const auto& kinds = events_.at(p);
    for (int i = 0; i < kActionKindCount; ++i) {
        const auto kind = static_cast<ActionKind>(i);
        const auto it = kinds.find(kind);
        if (it == kinds.end() || it->second.empty()) continue;

        std::vector<const StoredEvent*> sorted;
        sorted.reserve(it->second.size());
        for (const auto& [id, e] : it->second) sorted.push_back(&e);
        std::sort(sorted.begin(), sorted.end(),
                  [](const StoredEvent* a, const StoredEvent* b) {
                      return std::tie(a->ts, a->id) < std::tie(b->ts, b->id);
                  });

        std::string text;
        for (const StoredEvent* e : sorted) {
            text += e->to_json().dump();
            text += '\n';
        }
        write_text_atomic(dir / (std::string(to_string(kind)) + ".jsonl"), text);
    }

    const auto sync_it = sync_.find(p);
    if (sync_it != sync_.end()) {
        json j = json::object();
        for (const auto& [endpoint, s] : sync_it->second) {
            j[endpoint] = {{"pages_done", s.pages_done},
                           {"complete", s.complete},
                           {"last_fetch", s.last_fetch}};
        }
        write_text_atomic(dir / "sync.json", j.dump(2) + "\n");
    }
}

std::vector<ProjectRef> EventStore::projects() const {
    std::vector<ProjectRef> out;
    out.reserve(events_.size());
    for (const auto& [p, kinds] : events_) {
        (void)kinds;
        out.push_back(p);
    }
    return out;
}

std::vector<StoredEvent> EventStore::events(const ProjectRef& project) const {
    std::vector<StoredEvent> out;
    const auto it = events_.find(project);
    if (it == events_.end()) return out;
    for (const auto& [kind, by_id] : it->second) {
        (void)kind;
        for (const auto& [id, e] : by_id) {
            (void)id;
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end(), [](const StoredEvent& a, const StoredEvent& b) {
        return std::tie(a.ts, a.id) < std::tie(b.ts, b.id);
    });
    return out;
}

std::size_t EventStore::size() const {
    std::size_t n = 0;
    for (const auto& [p, kinds] : events_) {
        (void)p;
        for (const auto& [kind, by_id] : kinds) {
            (void)kind;
            n += by_id.size();
        }
    }
    return n;
}

EndpointSync EventStore::sync_state(const ProjectRef& project,
                                    const std::string& endpoint) const {
    const auto pit = sync_.find(project);
    if (pit == sync_.end()) return {};
    const auto eit = pit->second.find(endpoint);
    if (eit == pit->second.end()) return {};
    return eit->second;
}

void EventStore::set_sync_state(const ProjectRef& project,
                                const std::string& endpoint,
                                const EndpointSync& sync) {
    sync_[project][endpoint] = sync;
    dirty_[project] = true;
}

std::filesystem::path EventStore::project_dir(const ProjectRef& p) const {
    return root_ / p.slug();
}

} // namespace rolemine
