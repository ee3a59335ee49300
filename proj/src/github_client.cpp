#include "rolemine/github_client.hpp"

#include "rolemine/civil_time.hpp"
#include "rolemine/errors.hpp"
#include "rolemine/log.hpp"
#include "rolemine/version.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <thread>

namespace rolemine {

using nlohmann::json;

struct HttplibTransport::Impl {
    explicit Impl(const std::string& base_url) : client(base_url) {
        client.set_connection_timeout(std::chrono::seconds(15));
        client.set_read_timeout(std::chrono::seconds(60));
        client.set_follow_location(true);
    }
    httplib::Client client;
};

HttplibTransport::HttplibTransport(std::string base_url)
    : impl_(std::make_unique<Impl>(base_url)) {}

HttplibTransport::~HttplibTransport() = default;

HttpResponse HttplibTransport::get(const std::string& path_and_query,
                                   const HttpHeaders& headers) {
    httplib::Headers hl;
    for (const auto& [k, v] : headers) hl.emplace(k, v);
    HttpResponse out;
    auto result = impl_->client.Get(path_and_query, hl);
    if (!result) {
        out.transport_error = true;
        out.error = httplib::to_string(result.error());
        return out;
    }
    out.status = result->status;
    out.body = result->body;
    for (const auto& [k, v] : result->headers) {
        std::string key = k;
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        out.headers[key] = v;
    }
    return out;
}

RateLimiter::RateLimiter(std::chrono::milliseconds min_interval)
    : interval_(min_interval), next_(std::chrono::steady_clock::now()) {}

void RateLimiter::acquire() {
    if (interval_.count() <= 0) return;
    std::unique_lock lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (next_ > now) {
        std::this_thread::sleep_until(next_);
        next_ += interval_;
    } else {
        next_ = now + interval_;
    }
}

namespace {

bool header_has_next_link(const HttpResponse& response) {
    const auto it = response.headers.find("link");
    return it != response.headers.end() &&
           it->second.find("rel=\"next\"") != std::string::npos;
}

/// One paginating worker over a single list endpoint.
class EndpointFetcher {
public:
    EndpointFetcher(const ProjectRef& project, const TimeWindow& window,
                    const FetchOptions& options, RateLimiter& limiter,
                    std::atomic<bool>& abort, FetchStats& stats,
                    std::mutex& store_mutex, EventStore& store)
        : project_(project), window_(window), options_(options),
          limiter_(limiter), abort_(abort), stats_(stats),
          store_mutex_(store_mutex), store_(store),
          transport_(options.base_url) {}

    HttpResponse request(const std::string& path) {
        HttpHeaders headers{{"Accept", "application/vnd.github+json"},
                            {"User-Agent", std::string("rolemine/") + kToolVersion}};
        if (!options_.token.empty()) {
            headers.emplace_back("Authorization", "token " + options_.token);
        }
        int transport_failures = 0;
        int rate_limit_waits = 0;
        while (true) {
            if (abort_.load()) throw PartialFetchError("fetch aborted");
            limiter_.acquire();
            HttpResponse response = transport_.get(path, headers);
            {
                std::lock_guard lock(store_mutex_);
                ++stats_.requests;
            }
            if (response.transport_error) {
                if (++transport_failures > options_.max_retries) {
                    throw PartialFetchError("network failure on " + path + ": " +
                                            response.error);
                }
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(100 * transport_failures));
                continue;
            }
            if (response.status == 401) {
                throw AuthError("authentication rejected (HTTP 401) for " +
                                project_.full_name());
            }
            if (response.status == 404) {
                throw NotFoundError("project " + project_.full_name() +
                                    " not found (renamed or deleted?)");
            }
            if (response.status == 403 || response.status == 429) {
                if (++rate_limit_waits > 10) {
                    throw PartialFetchError("rate limited too long on " + path);
                }
                wait_for_rate_limit(response);
                continue;
            }
            if (response.status >= 500) {
                if (++transport_failures > options_.max_retries) {
                    throw PartialFetchError("server error " +
                                            std::to_string(response.status) +
                                            " on " + path);
                }
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(200 * transport_failures));
                continue;
            }
            return response;
        }
    }

    void wait_for_rate_limit(const HttpResponse& response) {
        long long wait_seconds = 1;
        if (const auto it = response.headers.find("retry-after");
            it != response.headers.end()) {
            wait_seconds = std::max(0LL, std::stoll(it->second));
        } else if (const auto remaining = response.headers.find("x-ratelimit-remaining");
                   remaining != response.headers.end() && remaining->second == "0") {
            if (const auto reset = response.headers.find("x-ratelimit-reset");
                reset != response.headers.end()) {
                const long long now = static_cast<long long>(time(nullptr));
                wait_seconds = std::max(0LL, std::stoll(reset->second) - now);
            }
        }
        log_info("rate limited, sleeping " + std::to_string(wait_seconds) + "s");
        std::this_thread::sleep_for(std::chrono::seconds(wait_seconds));
    }

    /// Walks pages of `base_path`, feeding each array item to `handle`.
    /// `handle` returns the events to persist for the item. Progress is
    /// committed per page.
    template <typename Handler>
    void paginate(const std::string& endpoint, const std::string& base_path,
                  Handler&& handle) {
        long long page = 1;
        {
            std::lock_guard lock(store_mutex_);
            const EndpointSync sync = store_.sync_state(project_, endpoint);
            if (!sync.complete && sync.pages_done > 0) {
                page = sync.pages_done + 1;
                log_info(endpoint + ": resuming at page " + std::to_string(page));
            }
        }
        while (true) {
            const std::string separator =
                base_path.find('?') == std::string::npos ? "?" : "&";
            const std::string path = base_path + separator +
                                     "per_page=" + std::to_string(options_.per_page) +
                                     "&page=" + std::to_string(page);
            HttpResponse response = request(path);

            // An empty repository reports 409 on the commits listing.
            if (response.status == 409) break;
            if (response.status != 200) {
                throw PartialFetchError("unexpected HTTP " +
                                        std::to_string(response.status) + " on " +
                                        path);
            }
            json items;
            try {
                items = json::parse(response.body);
            } catch (const json::exception& e) {
                throw PartialFetchError("bad JSON from " + path + ": " + e.what());
            }
            if (!items.is_array()) {
                throw PartialFetchError("expected array from " + path);
            }
            bool any_in_window = items.empty();
            for (const auto& item : items) {
                if (handle(item)) any_in_window = true;
            }
            {
                std::lock_guard lock(store_mutex_);
                EndpointSync sync = store_.sync_state(project_, endpoint);
                sync.pages_done = page;
                sync.complete = false;
                store_.set_sync_state(project_, endpoint, sync);
            }
            if (!header_has_next_link(response)) break;
            // Endpoints ordered newest-first can stop once a whole page
            // predates the window.
            if (!any_in_window && endpoint == "events") break;
            ++page;
        }
        std::lock_guard lock(store_mutex_);
        EndpointSync sync = store_.sync_state(project_, endpoint);
        sync.complete = true;
        sync.last_fetch = format_iso8601_utc(static_cast<std::int64_t>(time(nullptr)));
        store_.set_sync_state(project_, endpoint, sync);
    }

    void persist(const StoredEvent& event) {
        std::lock_guard lock(store_mutex_);
        ++stats_.seen;
        if (store_.add(project_, event)) ++stats_.added;
    }

    bool known(ActionKind kind, const std::string& id) {
        std::lock_guard lock(store_mutex_);
        return store_.contains(project_, kind, id);
    }

    const std::string repo_path() const {
        return "/repos/" + project_.owner + "/" + project_.name;
    }

    void fetch_commits() {
        const std::string base =
            repo_path() + "/commits?since=" + format_iso8601_utc(window_.start()) +
            "&until=" + format_iso8601_utc(window_.end());
        paginate("commits", base, [&](const json& item) {
            const std::string sha = item.at("sha").get<std::string>();
            const std::string id = item.value("node_id", sha);
            const auto& meta = item.at("commit").at("author");
            const std::int64_t ts = parse_iso8601_utc(meta.at("date").get<std::string>());
            if (!window_.contains(ts)) return false;

            std::string login;
            bool bot = false;
            if (item.contains("author") && item["author"].is_object()) {
                login = item["author"].value("login", std::string{});
                bot = item["author"].value("type", std::string{}) == "Bot";
            }
            if (login.empty()) {
                const std::string email = meta.value("email", std::string{});
                const auto alias = options_.aliases.find(email);
                if (alias != options_.aliases.end()) {
                    login = alias->second;
                } else {
                    std::lock_guard lock(store_mutex_);
                    ++stats_.dropped_unattributed;
                    log_warn("commit " + sha + " has no resolvable author (" +
                             email + "), dropped");
                    return true;
                }
            }
            if (known(ActionKind::Commit, id)) {
                std::lock_guard lock(store_mutex_);
                ++stats_.seen;
                return true;
            }

            // stats and file lists only come from the per-commit endpoint
            HttpResponse detail = request(repo_path() + "/commits/" + sha);
            if (detail.status != 200) {
                throw PartialFetchError("commit detail fetch failed for " + sha);
            }
            const json info = json::parse(detail.body);
            StoredEvent e;
            e.id = id;
            e.kind = ActionKind::Commit;
            e.actor = login;
            e.actor_bot = bot;
            e.ts = ts;
            if (info.contains("stats") && info["stats"].is_object()) {
                e.loc_changed = info["stats"].value("additions", 0LL) +
                                info["stats"].value("deletions", 0LL);
            }
            if (info.contains("files") && info["files"].is_array()) {
                for (const auto& f : info["files"]) {
                    e.files.push_back(f.value("filename", std::string{}));
                }
            }
            persist(e);
            return true;
        });
    }

    void fetch_issues() {
        const std::string base =
            repo_path() + "/issues?state=all&since=" +
            format_iso8601_utc(window_.start()) + "&direction=asc&sort=created";
        paginate("issues", base, [&](const json& item) {
            if (!item.contains("user") || !item["user"].is_object()) return false;
            const std::int64_t ts =
                parse_iso8601_utc(item.at("created_at").get<std::string>());
            if (!window_.contains(ts)) return false;
            StoredEvent e;
            e.id = item.value("node_id", std::to_string(item.value("id", 0LL)));
            e.kind = item.contains("pull_request") ? ActionKind::PrOpened
                                                   : ActionKind::IssueOpened;
            e.actor = item["user"].value("login", std::string{});
            e.actor_bot = item["user"].value("type", std::string{}) == "Bot";
            e.ts = ts;
            if (item.contains("body") && item["body"].is_string()) {
                e.body = item["body"].get<std::string>();
            }
            if (e.actor.empty()) return true;
            persist(e);
            return true;
        });
    }

    void fetch_comments() {
        const std::string base = repo_path() + "/issues/comments?since=" +
                                 format_iso8601_utc(window_.start()) +
                                 "&direction=asc&sort=created";
        paginate("comments", base, [&](const json& item) {
            if (!item.contains("user") || !item["user"].is_object()) return false;
            const std::int64_t ts =
                parse_iso8601_utc(item.at("created_at").get<std::string>());
            if (!window_.contains(ts)) return false;
            const std::string html_url = item.value("html_url", std::string{});
            StoredEvent e;
            e.id = item.value("node_id", std::to_string(item.value("id", 0LL)));
            e.kind = html_url.find("/pull/") != std::string::npos
                         ? ActionKind::PrComment
                         : ActionKind::IssueComment;
            e.actor = item["user"].value("login", std::string{});
            e.actor_bot = item["user"].value("type", std::string{}) == "Bot";
            e.ts = ts;
            if (item.contains("body") && item["body"].is_string()) {
                e.body = item["body"].get<std::string>();
            }
            if (e.actor.empty()) return true;
            persist(e);
            return true;
        });
    }

    void fetch_issue_events() {
        const std::string base = repo_path() + "/issues/events";
        paginate("events", base, [&](const json& item) {
            const std::string type = item.value("event", std::string{});
            const bool label_event = type == "labeled" || type == "unlabeled";
            const bool close_event = type == "closed";
            if (!label_event && !close_event) return false;
            if (!item.contains("actor") || !item["actor"].is_object()) return false;
            const std::int64_t ts =
                parse_iso8601_utc(item.at("created_at").get<std::string>());
            if (!window_.contains(ts)) return false;
            const bool is_pr = item.contains("issue") &&
                               item["issue"].is_object() &&
                               item["issue"].contains("pull_request");
            StoredEvent e;
            e.id = item.value("node_id", std::to_string(item.value("id", 0LL)));
            e.kind = label_event
                         ? (is_pr ? ActionKind::PrLabelChange
                                  : ActionKind::IssueLabelChange)
                         : (is_pr ? ActionKind::PrClosed : ActionKind::IssueClosed);
            e.actor = item["actor"].value("login", std::string{});
            e.actor_bot = item["actor"].value("type", std::string{}) == "Bot";
            e.ts = ts;
            if (e.actor.empty()) return true;
            persist(e);
            return true;
        });
    }

private:
    const ProjectRef& project_;
    const TimeWindow& window_;
    const FetchOptions& options_;
    RateLimiter& limiter_;
    std::atomic<bool>& abort_;
    FetchStats& stats_;
    std::mutex& store_mutex_;
    EventStore& store_;
    HttplibTransport transport_;
};

} // namespace

FetchStats fetch_project(EventStore& store, const ProjectRef& project,
                         const TimeWindow& window, const FetchOptions& options,
                         RateLimiter& limiter) {
    FetchStats stats;
    std::mutex store_mutex;
    std::atomic<bool> abort{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    using Stream = void (EndpointFetcher::*)();
    const std::vector<Stream> streams = {
        &EndpointFetcher::fetch_commits, &EndpointFetcher::fetch_issues,
        &EndpointFetcher::fetch_comments, &EndpointFetcher::fetch_issue_events};

    std::atomic<size_t> next_stream{0};
    const int workers = std::max(
        1, std::min<int>(options.max_workers, static_cast<int>(streams.size())));

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const size_t index = next_stream.fetch_add(1);
                if (index >= streams.size() || abort.load()) return;
                EndpointFetcher fetcher(project, window, options, limiter, abort,
                                        stats, store_mutex, store);
                try {
                    (fetcher.*streams[index])();
                } catch (...) {
                    abort.store(true);
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    // Persist whatever arrived, also on failure: progress is the point.
    store.save();
    if (failure) std::rethrow_exception(failure);
    return stats;
}

} // namespace rolemine
