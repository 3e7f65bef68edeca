#include "rentscope/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "rentscope/errors.hpp"

namespace rentscope::pipeline {

double percentile(const std::vector<double>& sorted_values, double p) {
    if (sorted_values.empty()) throw DataError("percentile: no data");
    const size_t n = sorted_values.size();
    if (n == 1) return sorted_values[0];
    double h = static_cast<double>(n - 1) * p / 100.0;
    if (h <= 0.0) return sorted_values.front();
    if (h >= static_cast<double>(n - 1)) return sorted_values.back();
    size_t lo = static_cast<size_t>(h);
    double frac = h - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

double percentile_of(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return percentile(values, p);
}

bool FilterBounds::contains(const Listing& l) const {
    if (!l.rent || !l.sqft || !l.rent_per_sqft) return false;
    double rent = static_cast<double>(*l.rent);
    double sqft = static_cast<double>(*l.sqft);
    double rpsf = *l.rent_per_sqft;
    return rent >= rent_min && rent <= rent_max && sqft >= sqft_min && sqft <= sqft_max &&
           rpsf >= rpsf_min && rpsf <= rpsf_max;
}

FilterBounds FilterBounds::published_2014() {
    FilterBounds b;
    b.p_low = 0.2;
    b.p_high = 99.8;
    b.rent_min = 189;
    b.rent_max = 10287;
    b.sqft_min = 220;
    b.sqft_max = 5200;
    b.rpsf_min = 0.10;
    b.rpsf_max = 12.63;
    return b;
}

namespace {

// Stable field-level ordering used only to break exact timestamp ties.
auto content_key(const Listing& l) {
    return std::make_tuple(l.title, l.rent.value_or(-1), l.sqft.value_or(-1),
                           l.bedrooms.value_or(-1),
                           l.location ? l.location->lat : -1000.0,
                           l.location ? l.location->lon : -1000.0, l.url, l.region);
}

bool survives_over(const Listing& a, const Listing& b) {
    if (a.collected_at != b.collected_at) return a.collected_at < b.collected_at;
    if (a.posted_at != b.posted_at) return a.posted_at < b.posted_at;
    return content_key(a) < content_key(b);
}

}  // namespace

std::vector<Listing> dedup(std::vector<Listing> listings) {
    std::map<std::string, Listing> by_id;
    for (auto& l : listings) {
        auto [it, inserted] = by_id.try_emplace(l.listing_id, l);
        if (!inserted && survives_over(l, it->second)) it->second = std::move(l);
    }
    std::vector<Listing> out;
    out.reserve(by_id.size());
    for (auto& [id, l] : by_id) out.push_back(std::move(l));
    return out;
}

std::vector<Listing> to_thorough(const std::vector<Listing>& unique) {
    std::vector<Listing> out;
    for (const auto& l : unique)
        if (l.rent && l.sqft && l.rent_per_sqft) out.push_back(l);
    return out;
}

FilterBounds compute_bounds(const std::vector<Listing>& thorough, double p_low, double p_high) {
    if (thorough.empty()) throw DataError("compute_bounds: empty corpus");
    std::vector<double> rents, sqfts, rpsfs;
    rents.reserve(thorough.size());
    sqfts.reserve(thorough.size());
    rpsfs.reserve(thorough.size());
    for (const auto& l : thorough) {
        if (!l.rent || !l.sqft || !l.rent_per_sqft)
            throw DataError("compute_bounds: corpus not thorough");
        rents.push_back(static_cast<double>(*l.rent));
        sqfts.push_back(static_cast<double>(*l.sqft));
        rpsfs.push_back(*l.rent_per_sqft);
    }
    std::sort(rents.begin(), rents.end());
    std::sort(sqfts.begin(), sqfts.end());
    std::sort(rpsfs.begin(), rpsfs.end());

    FilterBounds b;
    b.p_low = p_low;
    b.p_high = p_high;
    b.rent_min = percentile(rents, p_low);
    b.rent_max = percentile(rents, p_high);
    b.sqft_min = percentile(sqfts, p_low);
    b.sqft_max = percentile(sqfts, p_high);
    b.rpsf_min = percentile(rpsfs, p_low);
    b.rpsf_max = percentile(rpsfs, p_high);
    return b;
}

std::vector<Listing> apply_filter(const std::vector<Listing>& thorough,
                                  const FilterBounds& bounds) {
    std::vector<Listing> out;
    for (const auto& l : thorough)
        if (bounds.contains(l)) out.push_back(l);
    return out;
}

std::vector<Listing> to_geolocated(const std::vector<Listing>& filtered) {
    std::vector<Listing> out;
    for (const auto& l : filtered)
        if (l.location && l.location->valid()) out.push_back(l);
    return out;
}

namespace {

std::optional<double> mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    double sum = 0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

std::optional<double> median_of(std::vector<double> v) {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    return percentile(v, 50.0);
}

}  // namespace

StageStats stage_stats(const std::vector<Listing>& listings, std::string stage_name) {
    StageStats s;
    s.stage = std::move(stage_name);
    s.listings = listings.size();

    std::set<std::string> regions;
    std::vector<double> rents, sqfts, rpsfs, beds;
    for (const auto& l : listings) {
        regions.insert(l.region);
        if (l.rent) rents.push_back(static_cast<double>(*l.rent));
        if (l.sqft) sqfts.push_back(static_cast<double>(*l.sqft));
        if (l.rent_per_sqft) rpsfs.push_back(*l.rent_per_sqft);
        if (l.bedrooms) beds.push_back(static_cast<double>(*l.bedrooms));
    }
    s.regions = regions.size();
    s.median_rent = median_of(rents);
    s.median_sqft = median_of(sqfts);
    s.mean_bedrooms = mean_of(beds);

    if (!rpsfs.empty()) {
        std::sort(rpsfs.begin(), rpsfs.end());
        s.median_rpsf = percentile(rpsfs, 50.0);
        s.rpsf_iqr = percentile(rpsfs, 75.0) - percentile(rpsfs, 25.0);
        double mean = *mean_of(rpsfs);
        s.mean_rpsf = mean;
        double ss = 0;
        for (double x : rpsfs) ss += (x - mean) * (x - mean);
        s.rpsf_sd = std::sqrt(ss / static_cast<double>(rpsfs.size()));
    }
    return s;
}

StageSet run_pipeline(std::vector<Listing> original, std::optional<FilterBounds> fixed_bounds,
                      double p_low, double p_high) {
    StageSet set;
    set.unique = dedup(original);
    set.original = std::move(original);
    set.thorough = to_thorough(set.unique);
    if (fixed_bounds) {
        set.bounds = *fixed_bounds;
    } else {
        if (set.thorough.empty())
            throw DataError("cannot compute filter bounds: no listings with both rent and sqft");
        set.bounds = compute_bounds(set.thorough, p_low, p_high);
    }
    set.filtered = apply_filter(set.thorough, set.bounds);
    set.geolocated = to_geolocated(set.filtered);
    return set;
}

}  // namespace rentscope::pipeline
