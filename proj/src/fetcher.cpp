#include "rentscope/fetcher.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "rentscope/errors.hpp"

namespace fs = std::filesystem;

namespace rentscope::fetcher {

void CrawlConfig::validate() const {
    if (regions.empty()) throw UsageError("crawl config: no regions");
    if (max_pages_per_region < 1) throw UsageError("crawl config: max_pages_per_region must be >= 1");
    if (min_request_interval_ms <= 0)
        throw UsageError("crawl config: min_request_interval must be positive");
    if (timeout_ms <= 0) throw UsageError("crawl config: timeout must be positive");
    if (snapshot_dir.empty()) throw UsageError("crawl config: snapshot_dir empty");
    if (user_agent.empty()) throw UsageError("crawl config: user_agent empty");
    if (index_url_template.empty()) throw UsageError("crawl config: index_url_template empty");
}

std::optional<ParsedUrl> ParsedUrl::parse(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0) return std::nullopt;
    ParsedUrl u;
    u.scheme = url.substr(0, scheme_end);
    for (auto& c : u.scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (u.scheme != "http" && u.scheme != "https") return std::nullopt;

    size_t host_start = scheme_end + 3;
    size_t path_start = url.find_first_of("/?", host_start);
    std::string authority = path_start == std::string::npos
                                ? url.substr(host_start)
                                : url.substr(host_start, path_start - host_start);
    if (authority.empty()) return std::nullopt;

    size_t colon = authority.rfind(':');
    if (colon != std::string::npos && colon + 1 < authority.size() &&
        authority.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
        u.host = authority.substr(0, colon);
        u.port = std::stoi(authority.substr(colon + 1));
    } else {
        u.host = authority;
    }
    if (u.host.empty()) return std::nullopt;
    for (auto& c : u.host) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    if (path_start == std::string::npos) {
        u.path = "/";
    } else if (url[path_start] == '?') {
        u.path = "/" + url.substr(path_start);
    } else {
        u.path = url.substr(path_start);
    }
    return u;
}

std::string ParsedUrl::origin() const {
    std::string out = scheme + "://" + host;
    if (port > 0) out += ":" + std::to_string(port);
    return out;
}

std::string ParsedUrl::host_key() const {
    if (port > 0) return host + ":" + std::to_string(port);
    return host;
}

std::string resolve_url(const std::string& base, const std::string& href) {
    if (href.empty()) return base;
    if (href.find("://") != std::string::npos) return href;
    auto b = ParsedUrl::parse(base);
    if (!b) return href;
    if (href.size() >= 2 && href[0] == '/' && href[1] == '/') return b->scheme + ":" + href;
    if (href[0] == '/') return b->origin() + href;
    // relative: replace everything after the last slash of the base path
    std::string path = b->path;
    size_t q = path.find('?');
    if (q != std::string::npos) path = path.substr(0, q);
    size_t slash = path.rfind('/');
    path = slash == std::string::npos ? "/" : path.substr(0, slash + 1);
    return b->origin() + path + href;
}

RateLimiter::RateLimiter(long long interval_ms) : interval_ms_(interval_ms) {}

std::chrono::steady_clock::time_point RateLimiter::acquire(const std::string& host) {
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto now = std::chrono::steady_clock::now();
        slot = now;
        auto it = next_slot_.find(host);
        if (it != next_slot_.end() && it->second > now) slot = it->second;
        next_slot_[host] = slot + std::chrono::milliseconds(interval_ms_);
        log_.emplace_back(host, slot);
    }
    std::this_thread::sleep_until(slot);
    return slot;
}

std::vector<std::pair<std::string, std::chrono::steady_clock::time_point>> RateLimiter::slot_log()
    const {
    std::lock_guard<std::mutex> lk(mu_);
    return log_;
}

bool RobotsRules::allowed(const std::string& path) const {
    if (allow_all) return true;
    for (const auto& prefix : disallow_prefixes)
        if (path.rfind(prefix, 0) == 0) return false;
    return true;
}

RobotsRules RobotsRules::parse(const std::string& body, const std::string& user_agent) {
    RobotsRules rules;
    std::string ua_lower = user_agent;
    for (auto& c : ua_lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    auto trim = [](std::string s) {
        size_t i = 0;
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = s.size();
        while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
        return s.substr(i, j - i);
    };

    bool group_applies = false;
    bool in_agent_lines = false;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t nl = body.find('\n', pos);
        std::string line = nl == std::string::npos ? body.substr(pos)
                                                   : body.substr(pos, nl - pos);
        pos = nl == std::string::npos ? body.size() + 1 : nl + 1;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

        if (key == "user-agent") {
            std::string token = value;
            for (auto& c : token)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (!in_agent_lines) group_applies = false;  // a new group starts
            in_agent_lines = true;
            if (token == "*" || (!token.empty() && ua_lower.find(token) != std::string::npos))
                group_applies = true;
        } else if (key == "disallow") {
            in_agent_lines = false;
            if (group_applies && !value.empty()) {
                rules.disallow_prefixes.push_back(value);
                rules.allow_all = false;
            }
        } else {
            in_agent_lines = false;
        }
    }
    return rules;
}

SnapshotStore::SnapshotStore(std::string root) : root_(std::move(root)) {
    std::error_code ec;
    if (!fs::exists(root_, ec)) return;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root_, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".snap")
            files.push_back(entry.path());
    for (const auto& path : files) {
        try {
            Snapshot s = read_snapshot_file(path.string());
            seen_.emplace(s.url, s.content_hash);
        } catch (const DataError&) {
            // a torn or foreign file never blocks new writes
        }
    }
}

bool SnapshotStore::put(const Snapshot& s) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (!seen_.emplace(s.url, s.content_hash).second) return false;
    }
    fs::path dir = fs::path(root_) / s.region;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create snapshot dir " + dir.string() + ": " + ec.message());

    char name[32];
    std::snprintf(name, sizeof name, "%016llx.snap",
                  static_cast<unsigned long long>(s.content_hash));
    write_snapshot_file((dir / name).string(), s);
    return true;
}

std::vector<Snapshot> SnapshotStore::load_region(const std::string& region) const {
    std::vector<Snapshot> out;
    fs::path dir = fs::path(root_) / region;
    std::error_code ec;
    if (!fs::exists(dir, ec)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".snap")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) out.push_back(read_snapshot_file(path.string()));
    return out;
}

std::vector<Snapshot> SnapshotStore::load_all() const {
    std::vector<Snapshot> out;
    std::error_code ec;
    if (!fs::exists(root_, ec)) return out;
    std::vector<std::string> regions;
    for (const auto& entry : fs::directory_iterator(root_, ec))
        if (entry.is_directory()) regions.push_back(entry.path().filename().string());
    std::sort(regions.begin(), regions.end());
    for (const auto& region : regions) {
        auto batch = load_region(region);
        out.insert(out.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
    }
    return out;
}

struct Fetcher::Origin {
    std::unique_ptr<httplib::Client> client;
};

Fetcher::Fetcher(const CrawlConfig& config)
    : config_(config), limiter_(config.min_request_interval_ms) {
    config_.validate();
}

Fetcher::~Fetcher() = default;

Fetcher::Origin& Fetcher::origin_for(const ParsedUrl& u) {
    std::lock_guard<std::mutex> lk(mu_);
    std::string key = u.origin();
    auto it = origins_.find(key);
    if (it == origins_.end()) {
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
        if (u.scheme == "https")
            throw DataError("https url needs TLS support, which this build lacks: " + key);
#endif
        auto origin = std::make_unique<Origin>();
        origin->client = std::make_unique<httplib::Client>(key);
        origin->client->set_connection_timeout(0, config_.timeout_ms * 1000);
        origin->client->set_read_timeout(0, config_.timeout_ms * 1000);
        origin->client->set_follow_location(true);
        origin->client->set_default_headers({{"User-Agent", config_.user_agent}});
        origin->client->set_keep_alive(true);
        it = origins_.emplace(key, std::move(origin)).first;
    }
    return *it->second;
}

Stamp Fetcher::next_stamp(const std::string& region) {
    std::lock_guard<std::mutex> lk(mu_);
    Stamp now = now_utc();
    auto it = last_stamp_.find(region);
    if (it != last_stamp_.end() && now < it->second) now = it->second;
    last_stamp_[region] = now;
    return now;
}

Snapshot Fetcher::fetch(const std::string& url, const std::string& region) {
    auto parsed = ParsedUrl::parse(url);
    if (!parsed) throw DataError("malformed url: " + url);
    Origin& origin = origin_for(*parsed);

    long long backoff_ms = config_.min_request_interval_ms;
    std::string last_error;
    for (int attempt = 1; attempt <= 3; ++attempt) {
        limiter_.acquire(parsed->host_key());
        httplib::Result res = origin.client->Get(parsed->path);
        if (res) {
            return make_snapshot(url, region, next_stamp(region), res->status, res->body);
        }
        last_error = httplib::to_string(res.error());
        if (attempt < 3) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
    }
    throw DataError("fetch failed after 3 attempts: " + url + " (" + last_error + ")");
}

bool Fetcher::robots_allowed(const std::string& url) {
    if (!config_.respect_robots) return true;
    auto parsed = ParsedUrl::parse(url);
    if (!parsed) return false;

    std::string key = parsed->origin();
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = robots_.find(key);
        if (it != robots_.end()) return it->second.allowed(parsed->path);
    }

    Origin& origin = origin_for(*parsed);
    limiter_.acquire(parsed->host_key());
    httplib::Result res = origin.client->Get("/robots.txt");

    RobotsRules rules;  // unreachable or non-200 robots.txt means allow-all
    if (res && res->status == 200) rules = RobotsRules::parse(res->body, config_.user_agent);

    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = robots_.emplace(key, std::move(rules));
    return it->second.allowed(parsed->path);
}

std::size_t crawl_region(const std::string& region, const CrawlConfig& config,
                         SnapshotStore& store, const extractor::SelectorSet& selectors,
                         Fetcher& fetcher, std::vector<std::string>* diagnostics) {
    auto diag = [&](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(region + ": " + msg);
    };

    std::string index_url = config.index_url_template;
    const std::string placeholder = "{region}";
    size_t at = index_url.find(placeholder);
    if (at != std::string::npos) index_url.replace(at, placeholder.size(), region);

    std::size_t persisted = 0;
    auto persist = [&](const Snapshot& s) {
        try {
            if (store.put(s)) ++persisted;
        } catch (const DataError& e) {
            throw DataError(std::string(e.what()) + " (partial progress: " +
                            std::to_string(persisted) + " snapshots persisted for " + region +
                            ")");
        }
    };

    std::vector<std::string> detail_urls;
    std::set<std::string> queued;
    bool any_index = false;

    std::string next = index_url;
    int index_pages = 0;
    while (!next.empty() && index_pages < config.max_pages_per_region) {
        if (!fetcher.robots_allowed(next)) {
            diag("robots disallow index page " + next);
            break;
        }
        Snapshot snap;
        try {
            snap = fetcher.fetch(next, region);
        } catch (const DataError& e) {
            diag(e.what());
            break;
        }
        ++index_pages;
        if (!snap.parseable()) {
            persist(snap);
            diag("index page " + next + " returned status " + std::to_string(snap.http_status));
            break;
        }
        any_index = true;
        persist(snap);

        for (const auto& ref : extractor::parse_index(snap, selectors, diagnostics)) {
            std::string url = resolve_url(next, ref.url);
            if (queued.insert(url).second) detail_urls.push_back(url);
        }
        auto next_href = extractor::index_next_url(snap, selectors);
        next = next_href ? resolve_url(next, *next_href) : std::string();
    }

    if (!any_index) {
        diag("empty crawl: no index pages reachable");
        return persisted;
    }

    int detail_pages = 0;
    for (const auto& url : detail_urls) {
        if (detail_pages >= config.max_pages_per_region) break;
        if (!fetcher.robots_allowed(url)) {
            diag("robots disallow " + url);
            continue;
        }
        Snapshot snap;
        try {
            snap = fetcher.fetch(url, region);
        } catch (const DataError& e) {
            diag(e.what());
            continue;
        }
        ++detail_pages;
        if (!snap.parseable()) {
            diag("detail page " + url + " returned status " + std::to_string(snap.http_status));
            persist(snap);
            continue;
        }
        persist(snap);
    }
    return persisted;
}

}  // namespace rentscope::fetcher
