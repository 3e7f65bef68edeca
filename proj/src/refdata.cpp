#include "rentscope/refdata.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "rentscope/csvio.hpp"
#include "rentscope/errors.hpp"

namespace rentscope::refdata {

namespace {

std::string trim(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = s.size();
    while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
    return std::string(s.substr(i, j - i));
}

struct Block {
    std::vector<std::string> regions;
    std::string area_id;
    std::optional<AreaKind> kind;
    std::optional<bool> fmr_excluded;
    size_t first_line = 0;
};

void commit_block(Crosswalk& cw, Block& b, const std::string& origin) {
    if (b.regions.empty() && b.area_id.empty()) return;
    std::string where = origin + ":" + std::to_string(b.first_line);
    if (b.area_id.empty()) throw DataError(where + ": crosswalk block has no 'area ='");
    if (b.regions.empty())
        throw DataError(where + ": crosswalk area '" + b.area_id + "' has no regions");

    AreaInfo& info = cw.areas[b.area_id];
    if (info.area_id.empty()) {
        info.area_id = b.area_id;
        info.kind = b.kind.value_or(AreaKind::MSA);
        info.fmr_excluded = b.fmr_excluded.value_or(false);
    } else {
        // a later block may extend an area's region list but not contradict it
        if (b.kind && *b.kind != info.kind)
            throw DataError(where + ": conflicting kind for area '" + b.area_id + "'");
        if (b.fmr_excluded && *b.fmr_excluded != info.fmr_excluded)
            throw DataError(where + ": conflicting fmr_excluded for area '" + b.area_id + "'");
    }
    for (const auto& region : b.regions) {
        auto [it, inserted] = cw.region_to_area.emplace(region, b.area_id);
        if (!inserted)
            throw DataError(where + ": duplicate crosswalk entry for region '" + region + "'");
        info.regions.push_back(region);
    }
    b = Block{};
}

}  // namespace

Crosswalk parse_crosswalk(std::string_view text, const std::string& origin) {
    Crosswalk cw;
    Block block;

    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        bool last = nl == std::string_view::npos;
        pos = last ? text.size() + 1 : nl + 1;
        ++lineno;

        std::string line = trim(raw);
        if (line.empty()) {
            commit_block(cw, block, origin);
            continue;
        }
        if (line[0] == '#') continue;
        std::string where = origin + ":" + std::to_string(lineno);

        size_t eq = line.find('=');
        if (eq == std::string::npos) throw DataError(where + ": expected 'key = value'");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.empty()) throw DataError(where + ": empty value for '" + key + "'");

        if (block.regions.empty() && block.area_id.empty()) block.first_line = lineno;

        if (key == "region") {
            block.regions.push_back(value);
        } else if (key == "area") {
            if (!block.area_id.empty())
                throw DataError(where + ": block already has area '" + block.area_id + "'");
            block.area_id = value;
        } else if (key == "kind") {
            if (value == "MSA") block.kind = AreaKind::MSA;
            else if (value == "CSA") block.kind = AreaKind::CSA;
            else throw DataError(where + ": unknown area kind '" + value + "'");
        } else if (key == "fmr_excluded") {
            if (value == "true") block.fmr_excluded = true;
            else if (value == "false") block.fmr_excluded = false;
            else throw DataError(where + ": fmr_excluded must be true or false");
        } else {
            throw DataError(where + ": unknown crosswalk key '" + key + "'");
        }
    }
    commit_block(cw, block, origin);
    if (cw.region_to_area.empty()) throw DataError(origin + ": crosswalk has no entries");
    return cw;
}

Crosswalk load_crosswalk(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open crosswalk: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_crosswalk(buf.str(), path);
}

std::optional<std::string> resolve_region(const Crosswalk& cw, const std::string& region) {
    auto it = cw.region_to_area.find(region);
    if (it == cw.region_to_area.end()) return std::nullopt;
    return it->second;
}

namespace {

double parse_number(const std::string& field, const std::string& path, size_t row,
                    const std::string& col) {
    std::string v = trim(field);
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw DataError(path + " row " + std::to_string(row) + ": non-numeric " + col + " '" +
                        field + "'");
    return out;
}

void require_columns(const csv::Table& t, const std::string& path,
                     const std::vector<std::string>& cols) {
    std::string missing;
    for (const auto& c : cols) {
        if (t.column(c) < 0) {
            if (!missing.empty()) missing += ", ";
            missing += c;
        }
    }
    if (!missing.empty()) throw DataError(path + ": missing required columns: " + missing);
}

void warn_if_empty(const csv::Table& t, const std::string& path,
                   std::vector<std::string>* warnings) {
    if (t.rows.empty() && warnings) warnings->push_back(path + ": no data rows");
}

}  // namespace

std::optional<double> FmrTable::lookup(const std::string& area_id, int bedrooms) const {
    auto it = cells.find({area_id, bedrooms});
    if (it == cells.end()) return std::nullopt;
    return it->second;
}

std::optional<double> HudTable::lookup(const std::string& area_id, int bedrooms) const {
    auto it = cells.find({area_id, bedrooms});
    if (it == cells.end()) return std::nullopt;
    return it->second;
}

const AcsRecord* AcsTable::lookup(const std::string& area_id) const {
    auto it = by_area.find(area_id);
    return it == by_area.end() ? nullptr : &it->second;
}

FmrTable load_fmr(const std::string& path, std::vector<std::string>* warnings) {
    csv::Table t = csv::read_file(path);
    require_columns(t, path, {"area_id", "bedrooms", "fmr"});
    warn_if_empty(t, path, warnings);
    int ca = t.column("area_id"), cb = t.column("bedrooms"), cf = t.column("fmr");

    FmrTable table;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        size_t row = i + 2;  // header is row 1
        const auto& r = t.rows[i];
        std::string area = trim(r.at(ca));
        int bedrooms = static_cast<int>(parse_number(r.at(cb), path, row, "bedrooms"));
        double fmr = parse_number(r.at(cf), path, row, "fmr");
        if (area.empty()) throw DataError(path + " row " + std::to_string(row) + ": empty area_id");
        if (bedrooms < 0 || bedrooms > 4)
            throw DataError(path + " row " + std::to_string(row) + ": bedrooms out of range 0-4");
        if (fmr <= 0) throw DataError(path + " row " + std::to_string(row) + ": fmr not positive");
        if (!table.cells.emplace(std::make_pair(area, bedrooms), fmr).second)
            throw DataError(path + " row " + std::to_string(row) + ": duplicate cell for " + area +
                            "/" + std::to_string(bedrooms));
    }
    return table;
}

HudTable load_hud_medians(const std::string& path, std::vector<std::string>* warnings) {
    csv::Table t = csv::read_file(path);
    require_columns(t, path, {"area_id", "bedrooms", "median_rent"});
    warn_if_empty(t, path, warnings);
    int ca = t.column("area_id"), cb = t.column("bedrooms"), cm = t.column("median_rent");

    HudTable table;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        size_t row = i + 2;
        const auto& r = t.rows[i];
        std::string area = trim(r.at(ca));
        int bedrooms = static_cast<int>(parse_number(r.at(cb), path, row, "bedrooms"));
        double rent = parse_number(r.at(cm), path, row, "median_rent");
        if (area.empty()) throw DataError(path + " row " + std::to_string(row) + ": empty area_id");
        if (bedrooms < 1 || bedrooms > 4)
            throw DataError(path + " row " + std::to_string(row) + ": bedrooms out of range 1-4");
        if (rent <= 0)
            throw DataError(path + " row " + std::to_string(row) + ": median_rent not positive");
        if (!table.cells.emplace(std::make_pair(area, bedrooms), rent).second)
            throw DataError(path + " row " + std::to_string(row) + ": duplicate cell for " + area +
                            "/" + std::to_string(bedrooms));
    }
    return table;
}

AcsTable load_acs(const std::string& path, std::vector<std::string>* warnings) {
    csv::Table t = csv::read_file(path);
    require_columns(t, path, {"area_id", "median_income", "population"});
    warn_if_empty(t, path, warnings);
    int ca = t.column("area_id"), ci = t.column("median_income"), cp = t.column("population");

    AcsTable table;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        size_t row = i + 2;
        const auto& r = t.rows[i];
        AcsRecord rec;
        rec.area_id = trim(r.at(ca));
        rec.median_income = parse_number(r.at(ci), path, row, "median_income");
        rec.population = static_cast<long long>(parse_number(r.at(cp), path, row, "population"));
        if (rec.area_id.empty())
            throw DataError(path + " row " + std::to_string(row) + ": empty area_id");
        if (rec.median_income <= 0)
            throw DataError(path + " row " + std::to_string(row) + ": median_income not positive");
        if (rec.population <= 0)
            throw DataError(path + " row " + std::to_string(row) + ": population not positive");
        if (!table.by_area.emplace(rec.area_id, rec).second)
            throw DataError(path + " row " + std::to_string(row) + ": duplicate area " +
                            rec.area_id);
    }
    return table;
}

std::set<std::string> sampled_areas(const Crosswalk& cw, const AcsTable& acs,
                                    const std::map<std::string, std::size_t>& listings_per_region,
                                    std::size_t top_n) {
    std::set<std::string> out;

    // top areas by population
    std::vector<std::pair<long long, std::string>> by_pop;
    for (const auto& [area_id, rec] : acs.by_area)
        if (cw.areas.count(area_id)) by_pop.emplace_back(rec.population, area_id);
    std::sort(by_pop.begin(), by_pop.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (size_t i = 0; i < by_pop.size() && i < top_n; ++i) out.insert(by_pop[i].second);

    // top regions by listing count, mapped to their areas
    std::vector<std::pair<std::size_t, std::string>> by_count;
    for (const auto& [region, count] : listings_per_region) by_count.emplace_back(count, region);
    std::sort(by_count.begin(), by_count.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (size_t i = 0; i < by_count.size() && i < top_n; ++i)
        if (auto area = resolve_region(cw, by_count[i].second)) out.insert(*area);

    return out;
}

}  // namespace rentscope::refdata
