#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rentscope/extractor.hpp"
#include "rentscope/snapshot.hpp"

namespace rentscope::fetcher {

struct CrawlConfig {
    std::vector<std::string> regions;
    int max_pages_per_region = 25;
    long long min_request_interval_ms = 500;
    std::string user_agent = "rentscope/0.1 (+research crawler)";
    long long timeout_ms = 10000;
    std::string snapshot_dir = "snapshots";
    bool respect_robots = true;
    // {region} expands to the region identifier; tests point this at a
    // local fixture server.
    std::string index_url_template = "https://{region}.craigslist.org/search/apa";

    void validate() const;  // throws UsageError when an invariant fails
};

struct ParsedUrl {
    std::string scheme;
    std::string host;
    int port = 0;  // 0 means scheme default
    std::string path;  // includes query, starts with '/'

    static std::optional<ParsedUrl> parse(const std::string& url);
    std::string origin() const;    // scheme://host[:port]
    std::string host_key() const;  // host[:port], the rate-limit key
};

// Join a possibly relative href against the page it appeared on.
std::string resolve_url(const std::string& base, const std::string& href);

// Hands out per-host time slots spaced at least the configured interval
// apart. Callers sleep until their slot; reservation order is the lock
// acquisition order, so concurrent callers never share a slot.
class RateLimiter {
  public:
    explicit RateLimiter(long long interval_ms);

    // Blocks until the host's next slot arrives; returns the slot time.
    std::chrono::steady_clock::time_point acquire(const std::string& host);

    // Slot times per host, in grant order. Consecutive slots for one host
    // are spaced >= interval.
    std::vector<std::pair<std::string, std::chrono::steady_clock::time_point>> slot_log() const;

  private:
    mutable std::mutex mu_;
    long long interval_ms_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_slot_;
    std::vector<std::pair<std::string, std::chrono::steady_clock::time_point>> log_;
};

struct RobotsRules {
    bool allow_all = true;
    std::vector<std::string> disallow_prefixes;

    bool allowed(const std::string& path) const;
    // Keeps the groups whose user-agent token is "*" or appears in ours.
    static RobotsRules parse(const std::string& body, const std::string& user_agent);
};

// One file per (region, body hash); duplicate (url, content_hash) pairs are
// dropped. Safe for concurrent put() calls.
class SnapshotStore {
  public:
    explicit SnapshotStore(std::string root);

    // True when the snapshot was newly persisted.
    bool put(const Snapshot& s);

    std::vector<Snapshot> load_region(const std::string& region) const;
    std::vector<Snapshot> load_all() const;
    const std::string& root() const { return root_; }

  private:
    std::string root_;
    std::mutex mu_;
    std::set<std::pair<std::string, std::uint64_t>> seen_;
};

class Fetcher {
  public:
    explicit Fetcher(const CrawlConfig& config);
    ~Fetcher();

    // Rate-limited GET with bounded retries on transport failure. Any HTTP
    // response, including >= 400, comes back as a snapshot; exhausted
    // retries throw DataError.
    Snapshot fetch(const std::string& url, const std::string& region);

    // False when robots.txt for the url's origin disallows the path.
    bool robots_allowed(const std::string& url);

    const RateLimiter& limiter() const { return limiter_; }

  private:
    struct Origin;

    CrawlConfig config_;
    RateLimiter limiter_;
    std::mutex mu_;
    std::map<std::string, std::unique_ptr<Origin>> origins_;
    std::map<std::string, RobotsRules> robots_;
    std::map<std::string, Stamp> last_stamp_;  // per-region fetched_at clamp

    Origin& origin_for(const ParsedUrl& u);
    Stamp next_stamp(const std::string& region);
};

// Crawl one region: index pages first, then each discovered detail page.
// max_pages_per_region caps index pages followed and detail pages fetched.
// Returns the number of snapshots newly persisted.
std::size_t crawl_region(const std::string& region, const CrawlConfig& config,
                         SnapshotStore& store, const extractor::SelectorSet& selectors,
                         Fetcher& fetcher, std::vector<std::string>* diagnostics = nullptr);

}  // namespace rentscope::fetcher
