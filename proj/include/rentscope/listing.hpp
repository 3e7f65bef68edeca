#pragma once

#include <optional>
#include <string>

#include "rentscope/timeutil.hpp"

namespace rentscope {

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    bool valid() const { return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0; }
    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// One advertised rental unit as extracted from a snapshot. Missing fields
// stay absent; nothing is defaulted at extraction time.
struct RawListing {
    std::string listing_id;  // site-assigned, mandatory (dedup key)
    std::string region;
    Stamp posted_at;  // date precision guaranteed
    std::string title;
    std::optional<long long> rent;  // USD/month, whole dollars
    std::optional<long long> sqft;  // square feet, positive
    std::optional<int> bedrooms;    // >= 0 ("studio" = 0)
    std::optional<GeoPoint> location;
    std::string url;
    Stamp collected_at;  // UTC
};

// Pipeline view of a listing: adds rent/ft², defined only when both rent and
// square footage are present.
struct Listing : RawListing {
    std::optional<double> rent_per_sqft;

    static Listing from_raw(RawListing raw) {
        Listing l;
        static_cast<RawListing&>(l) = std::move(raw);
        if (l.rent && l.sqft && *l.sqft > 0)
            l.rent_per_sqft = static_cast<double>(*l.rent) / static_cast<double>(*l.sqft);
        return l;
    }
};

}  // namespace rentscope
