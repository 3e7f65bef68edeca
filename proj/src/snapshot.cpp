#include "rentscope/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rentscope/errors.hpp"

namespace rentscope {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Snapshot make_snapshot(std::string url, std::string region, Stamp fetched_at, int http_status,
                       std::string body) {
    Snapshot s;
    s.url = std::move(url);
    s.region = std::move(region);
    s.fetched_at = fetched_at;
    s.http_status = http_status;
    s.content_hash = fnv1a64(body);
    s.body = std::move(body);
    return s;
}

namespace {

std::string hash_hex(std::uint64_t h) {
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace

std::string serialize_snapshot(const Snapshot& s) {
    std::ostringstream out;
    out << "url=" << s.url << '\n';
    out << "region=" << s.region << '\n';
    out << "fetched_at=" << s.fetched_at.to_iso() << '\n';
    out << "http_status=" << s.http_status << '\n';
    out << "content_hash=" << hash_hex(s.content_hash) << '\n';
    out << '\n';
    out << s.body;
    return out.str();
}

Snapshot deserialize_snapshot(std::string_view bytes) {
    Snapshot s;
    size_t pos = 0;
    bool saw_blank = false;
    while (pos <= bytes.size()) {
        size_t nl = bytes.find('\n', pos);
        if (nl == std::string_view::npos) break;
        std::string_view line = bytes.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) {
            saw_blank = true;
            break;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw DataError("snapshot header line missing '='");
        std::string_view key = line.substr(0, eq);
        std::string_view val = line.substr(eq + 1);
        if (key == "url") {
            s.url = std::string(val);
        } else if (key == "region") {
            s.region = std::string(val);
        } else if (key == "fetched_at") {
            auto st = parse_stamp(val);
            if (!st) throw DataError("snapshot has unparseable fetched_at");
            s.fetched_at = *st;
        } else if (key == "http_status") {
            int v = 0;
            auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
            if (ec != std::errc{} || p != val.data() + val.size())
                throw DataError("snapshot has bad http_status");
            s.http_status = v;
        } else if (key == "content_hash") {
            std::uint64_t v = 0;
            auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v, 16);
            if (ec != std::errc{} || p != val.data() + val.size())
                throw DataError("snapshot has bad content_hash");
            s.content_hash = v;
        }
        // unknown keys are tolerated so the format can grow
    }
    if (!saw_blank) throw DataError("snapshot missing header terminator");
    if (s.url.empty()) throw DataError("snapshot missing url");
    s.body = std::string(bytes.substr(pos));
    if (fnv1a64(s.body) != s.content_hash) throw DataError("snapshot content_hash mismatch");
    return s;
}

void write_snapshot_file(const std::string& path, const Snapshot& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    std::string bytes = serialize_snapshot(s);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_snapshot(buf.str());
}

}  // namespace rentscope
