#include <doctest.h>

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "rentscope/errors.hpp"
#include "rentscope/fetcher.hpp"

using namespace rentscope;
using namespace rentscope::fetcher;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    fs::path p = fs::temp_directory_path() / ("rentscope_test_" + tag + "_" +
                                              std::to_string(rng()));
    fs::create_directories(p);
    return p.string();
}

struct FixtureServer {
    httplib::Server srv;
    int port = 0;
    std::thread th;

    FixtureServer() {
        REQUIRE(srv.set_mount_point("/", std::string(TEST_FIXTURES_DIR) + "/www"));
        port = srv.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        th = std::thread([this] { srv.listen_after_bind(); });
        srv.wait_until_ready();
    }
    ~FixtureServer() {
        srv.stop();
        th.join();
    }
    std::string url(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

CrawlConfig local_config(const FixtureServer& server, const std::string& dir) {
    CrawlConfig cfg;
    cfg.regions = {"testville"};
    cfg.min_request_interval_ms = 10;
    cfg.snapshot_dir = dir;
    cfg.index_url_template = server.url("/{region}/search/apa");
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Snapshot stub_snapshot(const std::string& url, const std::string& body,
                       const std::string& region = "testville") {
    return make_snapshot(url, region, *parse_stamp("2014-06-12T08:00:00Z"), 200, body);
}

}  // namespace

TEST_SUITE("fetcher") {

TEST_CASE("url parsing") {
    auto u = ParsedUrl::parse("http://Example.COM/path/to?x=1&y=2");
    REQUIRE(u.has_value());
    CHECK(u->scheme == "http");
    CHECK(u->host == "example.com");
    CHECK(u->port == 0);
    CHECK(u->path == "/path/to?x=1&y=2");
    CHECK(u->origin() == "http://example.com");
    CHECK(u->host_key() == "example.com");

    auto v = ParsedUrl::parse("HTTPS://h.example:8443");
    REQUIRE(v.has_value());
    CHECK(v->scheme == "https");
    CHECK(v->port == 8443);
    CHECK(v->path == "/");
    CHECK(v->origin() == "https://h.example:8443");
    CHECK(v->host_key() == "h.example:8443");

    auto q = ParsedUrl::parse("http://h.example?x=1");
    REQUIRE(q.has_value());
    CHECK(q->path == "/?x=1");

    auto ip = ParsedUrl::parse("http://127.0.0.1:8080/a");
    REQUIRE(ip.has_value());
    CHECK(ip->host == "127.0.0.1");
    CHECK(ip->port == 8080);

    CHECK_FALSE(ParsedUrl::parse("ftp://example.com/x").has_value());
    CHECK_FALSE(ParsedUrl::parse("example.com/x").has_value());
    CHECK_FALSE(ParsedUrl::parse("://x").has_value());
    CHECK_FALSE(ParsedUrl::parse("http:///path").has_value());
    CHECK_FALSE(ParsedUrl::parse("http://:80/x").has_value());
}

TEST_CASE("relative url resolution") {
    const std::string base = "http://h.example/testville/search/apa?page=2";
    CHECK(resolve_url(base, "https://other.example/x") == "https://other.example/x");
    CHECK(resolve_url(base, "//cdn.example/lib.js") == "http://cdn.example/lib.js");
    CHECK(resolve_url(base, "/testville/apa/1.html") ==
          "http://h.example/testville/apa/1.html");
    CHECK(resolve_url(base, "apa2") == "http://h.example/testville/search/apa2");
    CHECK(resolve_url("http://h.example", "img.png") == "http://h.example/img.png");
    CHECK(resolve_url("http://h.example:8080/a/b.html", "/c") == "http://h.example:8080/c");
    CHECK(resolve_url(base, "") == base);
    CHECK(resolve_url("not a url", "page2.html") == "page2.html");
}

TEST_CASE("crawl config validation") {
    FixtureServer server;
    auto cfg = local_config(server, fresh_dir("cfg"));
    CHECK_NOTHROW(cfg.validate());

    auto broken = cfg;
    broken.regions.clear();
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.max_pages_per_region = 0;
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.min_request_interval_ms = 0;
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.timeout_ms = -1;
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.snapshot_dir.clear();
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.user_agent.clear();
    CHECK_THROWS_AS(broken.validate(), UsageError);
    broken = cfg;
    broken.index_url_template.clear();
    CHECK_THROWS_AS(broken.validate(), UsageError);
}

TEST_CASE("rate limiter spaces slots per host") {
    using namespace std::chrono;
    RateLimiter lim(30);
    lim.acquire("a");
    lim.acquire("b");  // other hosts do not wait behind a
    lim.acquire("a");
    lim.acquire("a");

    auto log = lim.slot_log();
    REQUIRE(log.size() == 4);
    CHECK(log[0].first == "a");
    CHECK(log[1].first == "b");
    std::vector<steady_clock::time_point> a_slots;
    for (const auto& [host, slot] : log)
        if (host == "a") a_slots.push_back(slot);
    REQUIRE(a_slots.size() == 3);
    CHECK(duration_cast<milliseconds>(a_slots[1] - a_slots[0]).count() >= 30);
    CHECK(duration_cast<milliseconds>(a_slots[2] - a_slots[1]).count() >= 30);
    // b went out immediately, well inside host a's second window
    CHECK(log[1].second < a_slots[1]);
}

TEST_CASE("rate limiter under concurrency hands out distinct slots") {
    using namespace std::chrono;
    RateLimiter lim(20);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i)
        threads.emplace_back([&lim] { lim.acquire("h"); });
    for (auto& t : threads) t.join();

    auto log = lim.slot_log();
    REQUIRE(log.size() == 4);
    std::vector<steady_clock::time_point> slots;
    for (const auto& [host, slot] : log) slots.push_back(slot);
    std::sort(slots.begin(), slots.end());
    for (size_t i = 1; i < slots.size(); ++i)
        CHECK(duration_cast<milliseconds>(slots[i] - slots[i - 1]).count() >= 20);
}

TEST_CASE("robots parsing picks the right groups") {
    const std::string body =
        "# rules\n"
        "User-agent: *\n"
        "Disallow: /admin/\n"
        "Disallow: /testville/account\n"
        "\n"
        "User-agent: badbot\n"
        "Disallow: /\n";
    auto rules = RobotsRules::parse(body, "rentscope/0.1 (+research crawler)");
    CHECK_FALSE(rules.allow_all);
    CHECK(rules.allowed("/testville/search/apa"));
    CHECK_FALSE(rules.allowed("/admin/tools"));
    CHECK_FALSE(rules.allowed("/testville/account"));
    CHECK_FALSE(rules.allowed("/testville/accounts"));  // prefix match
    CHECK(rules.allowed("/testville/apa/1.html"));

    auto bad = RobotsRules::parse(body, "BadBot/2.0");
    CHECK_FALSE(bad.allowed("/anything"));
    CHECK_FALSE(bad.allowed("/"));

    CHECK(RobotsRules::parse("", "x").allow_all);
    CHECK(RobotsRules::parse("User-agent: *\nDisallow:\n", "x").allowed("/a"));

    // stacked agent lines share one group; a later group starts clean
    auto stacked = RobotsRules::parse(
        "User-agent: alpha\nUser-agent: beta\nDisallow: /x\n"
        "User-agent: gamma\nDisallow: /y\n",
        "beta/1.0");
    CHECK_FALSE(stacked.allowed("/x/1"));
    CHECK(stacked.allowed("/y/1"));

    auto shouty = RobotsRules::parse("USER-AGENT: *\nDISALLOW: /q # trailing note\n", "x");
    CHECK_FALSE(shouty.allowed("/q/r"));
}

TEST_CASE("snapshot store dedups on url and content hash") {
    std::string root = fresh_dir("store");
    {
        SnapshotStore store(root);
        CHECK(store.put(stub_snapshot("http://t/1", "body one")));
        CHECK_FALSE(store.put(stub_snapshot("http://t/1", "body one")));
        CHECK(store.put(stub_snapshot("http://t/1", "body changed")));
        CHECK(store.put(stub_snapshot("http://t/2", "body two")));
        CHECK(store.put(stub_snapshot("http://l/1", "lake body", "lakecity")));

        auto tv = store.load_region("testville");
        CHECK(tv.size() == 3);
        for (size_t i = 1; i < tv.size(); ++i) CHECK(tv[i - 1].content_hash < tv[i].content_hash);
        CHECK(store.load_region("nowhere").empty());
        CHECK(store.load_all().size() == 4);
    }
    // a new store over the same directory remembers what was written
    SnapshotStore reopened(root);
    CHECK_FALSE(reopened.put(stub_snapshot("http://t/1", "body one")));
    CHECK_FALSE(reopened.put(stub_snapshot("http://t/2", "body two")));
    CHECK(reopened.put(stub_snapshot("http://t/3", "body three")));
    fs::remove_all(root);
}

TEST_CASE("snapshot store tolerates foreign files on reload") {
    std::string root = fresh_dir("corrupt");
    {
        SnapshotStore store(root);
        CHECK(store.put(stub_snapshot("http://t/1", "good")));
    }
    fs::create_directories(fs::path(root) / "junkregion");
    std::ofstream(fs::path(root) / "junkregion" / "torn.snap") << "not a snapshot";
    SnapshotStore reopened(root);  // must not throw
    CHECK_FALSE(reopened.put(stub_snapshot("http://t/1", "good")));
    CHECK_THROWS_AS(reopened.load_region("junkregion"), DataError);
    fs::remove_all(root);
}

TEST_CASE("fetch returns snapshots for any http status") {
    FixtureServer server;
    auto cfg = local_config(server, fresh_dir("fetch"));
    Fetcher f(cfg);

    std::string url = server.url("/testville/apa/4491000001.html");
    Snapshot ok = f.fetch(url, "testville");
    CHECK(ok.http_status == 200);
    CHECK(ok.url == url);
    CHECK(ok.region == "testville");
    CHECK(ok.parseable());
    CHECK(ok.body ==
          slurp(std::string(TEST_FIXTURES_DIR) + "/www/testville/apa/4491000001.html"));
    CHECK(ok.content_hash == fnv1a64(ok.body));

    Snapshot missing = f.fetch(server.url("/testville/apa/4491000404.html"), "testville");
    CHECK(missing.http_status == 404);
    CHECK_FALSE(missing.parseable());

    CHECK_THROWS_AS(f.fetch("not a url", "testville"), DataError);
    fs::remove_all(cfg.snapshot_dir);
}

TEST_CASE("fetch retries transport failures then gives up") {
    int dead_port;
    {
        httplib::Server probe;
        dead_port = probe.bind_to_any_port("127.0.0.1");
        probe.stop();
    }  // port was ours moments ago, nobody is listening now

    CrawlConfig cfg;
    cfg.regions = {"testville"};
    cfg.min_request_interval_ms = 5;
    cfg.snapshot_dir = "unused";
    cfg.index_url_template = "http://127.0.0.1:" + std::to_string(dead_port) + "/{region}";
    Fetcher f(cfg);
    std::string url = "http://127.0.0.1:" + std::to_string(dead_port) + "/x";
    CHECK_THROWS_AS(f.fetch(url, "testville"), DataError);

    size_t attempts = 0;
    for (const auto& [host, slot] : f.limiter().slot_log())
        if (host == "127.0.0.1:" + std::to_string(dead_port)) ++attempts;
    CHECK(attempts == 3);
}

TEST_CASE("robots are fetched once per origin and honored") {
    FixtureServer server;
    auto cfg = local_config(server, fresh_dir("robots"));
    Fetcher f(cfg);

    CHECK(f.robots_allowed(server.url("/testville/search/apa")));
    size_t after_first = f.limiter().slot_log().size();
    CHECK(after_first == 1);  // one request for robots.txt
    CHECK_FALSE(f.robots_allowed(server.url("/admin/panel")));
    CHECK_FALSE(f.robots_allowed(server.url("/testville/account")));
    CHECK(f.limiter().slot_log().size() == after_first);  // cached afterwards
    CHECK_FALSE(f.robots_allowed("garbage url"));

    auto loose = cfg;
    loose.respect_robots = false;
    Fetcher anarchist(loose);
    CHECK(anarchist.robots_allowed(server.url("/admin/panel")));
    CHECK(anarchist.limiter().slot_log().empty());
    fs::remove_all(cfg.snapshot_dir);
}

TEST_CASE("crawl walks index pagination and detail pages") {
    FixtureServer server;
    std::string dir = fresh_dir("crawl");
    auto cfg = local_config(server, dir);
    auto selectors =
        extractor::SelectorSet::load_file(std::string(TEST_DATA_DIR) + "/selectors.conf");

    SnapshotStore store(dir);
    Fetcher f(cfg);
    std::vector<std::string> diags;
    std::size_t persisted = crawl_region("testville", cfg, store, selectors, f, &diags);
    // 2 index pages, 13 detail pages, one 404 kept for the record
    CHECK(persisted == 16);

    auto snaps = store.load_region("testville");
    CHECK(snaps.size() == 16);
    size_t not_ok = 0;
    for (const auto& s : snaps) not_ok += s.parseable() ? 0 : 1;
    CHECK(not_ok == 1);

    size_t status_diags = 0;
    for (const auto& d : diags) status_diags += d.find("returned status 404") != std::string::npos;
    CHECK(status_diags == 1);

    // the same corpus again adds nothing
    Fetcher again(cfg);
    SnapshotStore store2(dir);
    CHECK(crawl_region("testville", cfg, store2, selectors, again) == 0);
    CHECK(store2.load_region("testville").size() == 16);
    fs::remove_all(dir);
}

TEST_CASE("crawl respects the page budget") {
    FixtureServer server;
    std::string dir = fresh_dir("capped");
    auto cfg = local_config(server, dir);
    cfg.max_pages_per_region = 1;

    auto selectors =
        extractor::SelectorSet::load_file(std::string(TEST_DATA_DIR) + "/selectors.conf");
    SnapshotStore store(dir);
    Fetcher f(cfg);
    CHECK(crawl_region("testville", cfg, store, selectors, f) == 2);  // 1 index + 1 detail
    fs::remove_all(dir);
}

TEST_CASE("crawl stops politely when robots disallow the index") {
    FixtureServer server;
    std::string dir = fresh_dir("blocked");
    auto cfg = local_config(server, dir);
    cfg.index_url_template = server.url("/admin/{region}");

    auto selectors =
        extractor::SelectorSet::load_file(std::string(TEST_DATA_DIR) + "/selectors.conf");
    SnapshotStore store(dir);
    Fetcher f(cfg);
    std::vector<std::string> diags;
    CHECK(crawl_region("testville", cfg, store, selectors, f, &diags) == 0);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].find("robots disallow index page") != std::string::npos);
    CHECK(diags[1].find("empty crawl") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("crawl reports an unreachable host as an empty crawl") {
    int dead_port;
    {
        httplib::Server probe;
        dead_port = probe.bind_to_any_port("127.0.0.1");
        probe.stop();
    }
    CrawlConfig cfg;
    cfg.regions = {"testville"};
    cfg.min_request_interval_ms = 5;
    cfg.snapshot_dir = fresh_dir("dead");
    cfg.index_url_template = "http://127.0.0.1:" + std::to_string(dead_port) + "/{region}";
    cfg.respect_robots = false;

    auto selectors =
        extractor::SelectorSet::load_file(std::string(TEST_DATA_DIR) + "/selectors.conf");
    SnapshotStore store(cfg.snapshot_dir);
    Fetcher f(cfg);
    std::vector<std::string> diags;
    CHECK(crawl_region("testville", cfg, store, selectors, f, &diags) == 0);
    REQUIRE(diags.size() == 2);
    CHECK(diags[0].find("fetch failed after 3 attempts") != std::string::npos);
    CHECK(diags[1].find("empty crawl") != std::string::npos);
    fs::remove_all(cfg.snapshot_dir);
}

}  // TEST_SUITE
