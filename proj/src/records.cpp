#include "rentscope/records.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "rentscope/errors.hpp"

namespace rentscope::records {

using nlohmann::json;

std::string to_line(const RawListing& l) {
    json j;
    j["listing_id"] = l.listing_id;
    j["region"] = l.region;
    j["posted_at"] = l.posted_at.to_iso();
    j["title"] = l.title;
    if (l.rent) j["rent"] = *l.rent;
    if (l.sqft) j["sqft"] = *l.sqft;
    if (l.bedrooms) j["bedrooms"] = *l.bedrooms;
    if (l.location) {
        j["latitude"] = l.location->lat;
        j["longitude"] = l.location->lon;
    }
    j["url"] = l.url;
    j["collected_at"] = l.collected_at.to_iso();
    return j.dump();
}

RawListing from_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("bad record line: ") + e.what());
    }
    if (!j.is_object()) throw DataError("record line is not an object");

    RawListing l;
    auto str = [&](const char* key, bool required) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) {
            if (required) throw DataError(std::string("record missing field: ") + key);
            return {};
        }
        if (!it->is_string()) throw DataError(std::string("record field not a string: ") + key);
        return it->get<std::string>();
    };

    l.listing_id = str("listing_id", true);
    if (l.listing_id.empty()) throw DataError("record has empty listing_id");
    l.region = str("region", true);
    l.title = str("title", false);
    l.url = str("url", false);

    auto posted = parse_stamp(str("posted_at", true));
    if (!posted) throw DataError("record has unparseable posted_at");
    l.posted_at = *posted;
    auto collected = parse_stamp(str("collected_at", true));
    if (!collected) throw DataError("record has unparseable collected_at");
    l.collected_at = *collected;

    auto num = [&](const char* key) -> std::optional<double> {
        auto it = j.find(key);
        if (it == j.end()) return std::nullopt;
        if (!it->is_number()) throw DataError(std::string("record field not numeric: ") + key);
        return it->get<double>();
    };

    if (auto v = num("rent")) {
        if (*v <= 0) throw DataError("record rent not positive");
        l.rent = static_cast<long long>(*v);
    }
    if (auto v = num("sqft")) {
        if (*v <= 0) throw DataError("record sqft not positive");
        l.sqft = static_cast<long long>(*v);
    }
    if (auto v = num("bedrooms")) {
        if (*v < 0) throw DataError("record bedrooms negative");
        l.bedrooms = static_cast<int>(*v);
    }
    auto lat = num("latitude");
    auto lon = num("longitude");
    if (lat.has_value() != lon.has_value())
        throw DataError("record has latitude without longitude or vice versa");
    if (lat) {
        GeoPoint p{*lat, *lon};
        if (!p.valid()) throw DataError("record coordinates out of range");
        l.location = p;
    }
    return l;
}

void write_records(std::ostream& out, const std::vector<RawListing>& listings) {
    for (const auto& l : listings) out << to_line(l) << '\n';
}

std::vector<RawListing> read_records(std::istream& in) {
    std::vector<RawListing> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(from_line(line));
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void write_records_file(const std::string& path, const std::vector<RawListing>& listings) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    write_records(out, listings);
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

std::vector<RawListing> read_records_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    return read_records(in);
}

}  // namespace rentscope::records
