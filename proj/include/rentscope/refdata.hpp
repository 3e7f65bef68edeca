#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rentscope::refdata {

enum class AreaKind { MSA, CSA };

struct AreaInfo {
    std::string area_id;
    AreaKind kind = AreaKind::MSA;
    bool fmr_excluded = false;
    std::vector<std::string> regions;
};

// Region identifiers are listing-site subdomains; area_ids are census
// statistical areas. Several regions can merge into one area.
struct Crosswalk {
    std::map<std::string, std::string> region_to_area;
    std::map<std::string, AreaInfo> areas;
};

// Crosswalk file: blocks separated by blank lines, each block one area.
//
//   region = losangeles
//   region = orangecounty
//   area = los_angeles_long_beach_anaheim_ca_msa
//   kind = MSA
//
// kind defaults to MSA, fmr_excluded to false. A region named twice anywhere
// in the file is a hard error.
Crosswalk parse_crosswalk(std::string_view text, const std::string& origin);
Crosswalk load_crosswalk(const std::string& path);

std::optional<std::string> resolve_region(const Crosswalk& cw, const std::string& region);

struct FmrRecord {
    std::string area_id;
    int bedrooms = 0;  // 0..4
    double fmr = 0;
};

struct HudMedianRent {
    std::string area_id;
    int bedrooms = 0;  // 1..4
    double median_rent = 0;
};

struct AcsRecord {
    std::string area_id;
    double median_income = 0;
    long long population = 0;
};

struct FmrTable {
    std::map<std::pair<std::string, int>, double> cells;
    std::optional<double> lookup(const std::string& area_id, int bedrooms) const;
};

struct HudTable {
    std::map<std::pair<std::string, int>, double> cells;
    std::optional<double> lookup(const std::string& area_id, int bedrooms) const;
};

struct AcsTable {
    std::map<std::string, AcsRecord> by_area;
    const AcsRecord* lookup(const std::string& area_id) const;
};

// CSV headers: fmr.csv `area_id,bedrooms,fmr`; hud_median.csv
// `area_id,bedrooms,median_rent`; acs.csv `area_id,median_income,population`.
// Missing columns and non-numeric values are hard errors; an empty data
// section only warns.
FmrTable load_fmr(const std::string& path, std::vector<std::string>* warnings = nullptr);
HudTable load_hud_medians(const std::string& path, std::vector<std::string>* warnings = nullptr);
AcsTable load_acs(const std::string& path, std::vector<std::string>* warnings = nullptr);

// The paper-style sample: areas in the top_n most populous plus areas whose
// regions rank in the top_n by listing count.
std::set<std::string> sampled_areas(const Crosswalk& cw, const AcsTable& acs,
                                    const std::map<std::string, std::size_t>& listings_per_region,
                                    std::size_t top_n = 50);

}  // namespace rentscope::refdata
