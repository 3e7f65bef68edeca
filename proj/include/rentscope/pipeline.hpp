#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rentscope/listing.hpp"

namespace rentscope::pipeline {

// Linear interpolation between closest order statistics: h = (n-1)*p/100,
// result = v[floor(h)] + frac(h) * (v[floor(h)+1] - v[floor(h)]).
// The same rule backs bounds, medians, IQR, and quintiles everywhere.
double percentile(const std::vector<double>& sorted_values, double p);
double percentile_of(std::vector<double> values, double p);  // sorts a copy first

struct FilterBounds {
    double p_low = 0.2;
    double p_high = 99.8;
    double rent_min = 0, rent_max = 0;
    double sqft_min = 0, sqft_max = 0;
    double rpsf_min = 0, rpsf_max = 0;

    bool contains(const Listing& l) const;

    // The 2014 nationwide bounds used by the fixed-bounds mode.
    static FilterBounds published_2014();
};

struct StageStats {
    std::string stage;
    std::size_t regions = 0;
    std::size_t listings = 0;
    std::optional<double> median_rent;
    std::optional<double> median_sqft;
    std::optional<double> median_rpsf;
    std::optional<double> mean_rpsf;
    std::optional<double> rpsf_iqr;
    std::optional<double> rpsf_sd;
    std::optional<double> mean_bedrooms;
};

// One survivor per listing_id: earliest collected_at, ties broken by earliest
// posted_at then by field content. Output is sorted by listing_id so results
// never depend on input order.
std::vector<Listing> dedup(std::vector<Listing> listings);

std::vector<Listing> to_thorough(const std::vector<Listing>& unique);

FilterBounds compute_bounds(const std::vector<Listing>& thorough, double p_low = 0.2,
                            double p_high = 99.8);

std::vector<Listing> apply_filter(const std::vector<Listing>& thorough,
                                  const FilterBounds& bounds);

std::vector<Listing> to_geolocated(const std::vector<Listing>& filtered);

StageStats stage_stats(const std::vector<Listing>& listings, std::string stage_name);

// All five stages in sequence. Bounds come from the thorough set unless
// fixed bounds are supplied.
struct StageSet {
    std::vector<Listing> original;
    std::vector<Listing> unique;
    std::vector<Listing> thorough;
    std::vector<Listing> filtered;
    std::vector<Listing> geolocated;
    FilterBounds bounds;
};

StageSet run_pipeline(std::vector<Listing> original,
                      std::optional<FilterBounds> fixed_bounds = std::nullopt,
                      double p_low = 0.2, double p_high = 99.8);

}  // namespace rentscope::pipeline
