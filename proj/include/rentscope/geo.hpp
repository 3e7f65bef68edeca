#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rentscope/indicators.hpp"
#include "rentscope/listing.hpp"

namespace rentscope::geo {

// Vertices are (lon, lat); rings are closed, first vertex repeated last.
struct Ring {
    std::vector<std::array<double, 2>> pts;
};

struct TractPolygon {
    std::string tract_id;
    std::vector<Ring> rings;  // rings[0] exterior, the rest holes
    double min_lon = 0, min_lat = 0, max_lon = 0, max_lat = 0;

    void compute_bbox();
};

// FeatureCollection of Polygon/MultiPolygon features carrying a tract_id
// (or GEOID) property. Open or undersized rings reject the feature.
std::vector<TractPolygon> parse_tracts_geojson(std::string_view text,
                                               std::vector<std::string>* diagnostics = nullptr);
std::vector<TractPolygon> load_tracts_geojson(const std::string& path,
                                              std::vector<std::string>* diagnostics = nullptr);

// Even-odd containment over all rings, points on any edge counted inside.
bool point_in_polygon(const GeoPoint& p, const TractPolygon& poly);

// Fixed-resolution grid of candidate lists. Lookups agree exactly with a
// linear scan over every polygon.
class TractIndex {
  public:
    TractIndex() = default;
    explicit TractIndex(std::vector<TractPolygon> polygons, int cells_per_axis = 64);

    std::vector<const TractPolygon*> candidates(const GeoPoint& p) const;
    const std::vector<TractPolygon>& polygons() const { return polys_; }

  private:
    std::vector<TractPolygon> polys_;
    double min_lon_ = 0, min_lat_ = 0, max_lon_ = 0, max_lat_ = 0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> cells_;

    int cell_x(double lon) const;
    int cell_y(double lat) const;
};

// Lexicographically smallest tract_id among containing tracts, absent when
// no tract contains the point.
std::optional<std::string> locate(const GeoPoint& p, const TractIndex& index);

struct TractAggregate {
    std::string tract_id;
    std::size_t listing_count = 0;
    double median_rpsf = 0;
    int quintile = 0;
};

std::vector<TractAggregate> tract_medians(const std::vector<Listing>& geolocated,
                                          const TractIndex& index,
                                          const indicators::QuintileBreaks& breaks,
                                          std::size_t min_count = 1,
                                          std::size_t* unlocated = nullptr);

// GeoJSON FeatureCollection with tract polygons and their aggregate
// properties; features ordered by tract_id.
std::string export_tracts_geojson(const std::vector<TractAggregate>& aggregates,
                                  const TractIndex& index);

// GeoJSON points for individual listings with {rent, sqft, rpsf, quintile}.
std::string export_points_geojson(const std::vector<Listing>& geolocated,
                                  const indicators::QuintileBreaks& breaks);

}  // namespace rentscope::geo
