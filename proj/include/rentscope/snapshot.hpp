#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rentscope/timeutil.hpp"

namespace rentscope {

std::uint64_t fnv1a64(std::string_view bytes);

// One fetched page, kept verbatim so extraction can rerun offline.
struct Snapshot {
    std::string url;
    std::string region;
    Stamp fetched_at;
    int http_status = 0;
    std::string body;
    std::uint64_t content_hash = 0;

    bool parseable() const { return http_status >= 200 && http_status < 400; }
};

Snapshot make_snapshot(std::string url, std::string region, Stamp fetched_at, int http_status,
                       std::string body);

// Snapshot files carry a header of key=value lines, a blank line, then the
// raw body bytes.
std::string serialize_snapshot(const Snapshot& s);
Snapshot deserialize_snapshot(std::string_view bytes);  // throws DataError

void write_snapshot_file(const std::string& path, const Snapshot& s);
Snapshot read_snapshot_file(const std::string& path);

}  // namespace rentscope
