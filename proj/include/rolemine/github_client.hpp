#pragma once

#include "rolemine/event_store.hpp"
#include "rolemine/time_window.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace rolemine {

struct HttpResponse {
    int status = 0;
    std::map<std::string, std::string> headers; // lower-cased keys
    std::string body;
    bool transport_error = false;
    std::string error;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& path_and_query,
                             const HttpHeaders& headers) = 0;
};

/// cpp-httplib backed transport; base_url is "http(s)://host[:port]".
/// Instances are not shared between threads; fetch workers each build
/// their own.
class HttplibTransport : public HttpTransport {
public:
    explicit HttplibTransport(std::string base_url);
    ~HttplibTransport() override;
    HttpResponse get(const std::string& path_and_query,
                     const HttpHeaders& headers) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Serializes request starts so concurrent workers share one request
/// budget. A zero interval disables pacing.
class RateLimiter {
public:
    explicit RateLimiter(std::chrono::milliseconds min_interval);
    void acquire();

private:
    std::mutex mutex_;
    std::chrono::milliseconds interval_;
    std::chrono::steady_clock::time_point next_;
};

struct FetchOptions {
    std::string base_url = "https://api.github.com";
    std::string token; // empty = anonymous
    int per_page = 100;
    int max_workers = 4;
    int max_retries = 3;
    std::map<std::string, std::string> aliases; // commit email -> login
};

struct FetchStats {
    std::size_t added = 0;    // events new to the store
    std::size_t seen = 0;     // records inspected
    std::size_t requests = 0; // HTTP requests issued
    std::size_t dropped_unattributed = 0;
};

/// Downloads commits, issues (PRs included), comments and issue events
/// for one project into the store, bounded-concurrent across endpoint
/// streams with a shared rate limiter. The store is saved before this
/// returns, also on failure, so interrupted runs resume from the recorded
/// page progress. Events outside the window are not persisted.
FetchStats fetch_project(EventStore& store, const ProjectRef& project,
                         const TimeWindow& window, const FetchOptions& options,
                         RateLimiter& limiter);

} // namespace rolemine
