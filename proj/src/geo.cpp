#include "rentscope/geo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "rentscope/errors.hpp"
#include "rentscope/pipeline.hpp"

namespace rentscope::geo {

using nlohmann::json;

void TractPolygon::compute_bbox() {
    min_lon = min_lat = 1e18;
    max_lon = max_lat = -1e18;
    for (const auto& ring : rings) {
        for (const auto& pt : ring.pts) {
            min_lon = std::min(min_lon, pt[0]);
            max_lon = std::max(max_lon, pt[0]);
            min_lat = std::min(min_lat, pt[1]);
            max_lat = std::max(max_lat, pt[1]);
        }
    }
}

namespace {

std::optional<Ring> parse_ring(const json& coords) {
    if (!coords.is_array() || coords.size() < 4) return std::nullopt;
    Ring ring;
    ring.pts.reserve(coords.size());
    for (const auto& pt : coords) {
        if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number())
            return std::nullopt;
        ring.pts.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    if (ring.pts.front() != ring.pts.back()) return std::nullopt;  // open ring
    return ring;
}

std::optional<std::vector<Ring>> parse_polygon_rings(const json& coords) {
    if (!coords.is_array() || coords.empty()) return std::nullopt;
    std::vector<Ring> rings;
    for (const auto& rc : coords) {
        auto ring = parse_ring(rc);
        if (!ring) return std::nullopt;
        rings.push_back(std::move(*ring));
    }
    return rings;
}

}  // namespace

std::vector<TractPolygon> parse_tracts_geojson(std::string_view text,
                                               std::vector<std::string>* diagnostics) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("bad GeoJSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc["features"].is_array())
        throw DataError("GeoJSON is not a FeatureCollection");

    auto diag = [&](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(msg);
    };

    std::vector<TractPolygon> out;
    size_t feature_no = 0;
    for (const auto& feature : doc["features"]) {
        ++feature_no;
        std::string where = "feature " + std::to_string(feature_no);
        if (!feature.is_object() || !feature.contains("geometry") ||
            !feature["geometry"].is_object()) {
            diag(where + ": no geometry, skipped");
            continue;
        }
        std::string tract_id;
        if (feature.contains("properties") && feature["properties"].is_object()) {
            const auto& props = feature["properties"];
            if (props.contains("tract_id") && props["tract_id"].is_string())
                tract_id = props["tract_id"].get<std::string>();
            else if (props.contains("GEOID") && props["GEOID"].is_string())
                tract_id = props["GEOID"].get<std::string>();
        }
        if (tract_id.empty()) {
            diag(where + ": no tract_id property, skipped");
            continue;
        }
        const auto& geom = feature["geometry"];
        std::string type = geom.value("type", "");
        if (!geom.contains("coordinates")) {
            diag(where + " (" + tract_id + "): geometry has no coordinates, skipped");
            continue;
        }
        std::vector<std::vector<Ring>> polys;
        bool bad = false;
        if (type == "Polygon") {
            auto rings = parse_polygon_rings(geom["coordinates"]);
            if (rings) polys.push_back(std::move(*rings));
            else bad = true;
        } else if (type == "MultiPolygon") {
            for (const auto& pc : geom["coordinates"]) {
                auto rings = parse_polygon_rings(pc);
                if (!rings) {
                    bad = true;
                    break;
                }
                polys.push_back(std::move(*rings));
            }
        } else {
            diag(where + " (" + tract_id + "): geometry type '" + type + "' unsupported, skipped");
            continue;
        }
        if (bad || polys.empty()) {
            diag(where + " (" + tract_id + "): invalid ring (open or under 4 vertices), rejected");
            continue;
        }
        for (auto& rings : polys) {
            TractPolygon poly;
            poly.tract_id = tract_id;
            poly.rings = std::move(rings);
            poly.compute_bbox();
            out.push_back(std::move(poly));
        }
    }
    return out;
}

std::vector<TractPolygon> load_tracts_geojson(const std::string& path,
                                              std::vector<std::string>* diagnostics) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tracts_geojson(buf.str(), diagnostics);
}

namespace {

bool on_segment(double px, double py, const std::array<double, 2>& a,
                const std::array<double, 2>& b) {
    double cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
    if (cross != 0.0) return false;
    return px >= std::min(a[0], b[0]) && px <= std::max(a[0], b[0]) &&
           py >= std::min(a[1], b[1]) && py <= std::max(a[1], b[1]);
}

}  // namespace

bool point_in_polygon(const GeoPoint& p, const TractPolygon& poly) {
    const double px = p.lon, py = p.lat;
    if (px < poly.min_lon || px > poly.max_lon || py < poly.min_lat || py > poly.max_lat)
        return false;

    // the inclusive rule: any edge hit is inside, before parity is consulted
    for (const auto& ring : poly.rings)
        for (size_t i = 0; i + 1 < ring.pts.size(); ++i)
            if (on_segment(px, py, ring.pts[i], ring.pts[i + 1])) return true;

    bool inside = false;
    for (const auto& ring : poly.rings) {
        const auto& pts = ring.pts;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            double xi = pts[i][0], yi = pts[i][1];
            double xj = pts[i + 1][0], yj = pts[i + 1][1];
            if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi)
                inside = !inside;
        }
    }
    return inside;
}

TractIndex::TractIndex(std::vector<TractPolygon> polygons, int cells_per_axis)
    : polys_(std::move(polygons)) {
    if (polys_.empty()) return;
    nx_ = ny_ = std::max(1, cells_per_axis);
    min_lon_ = min_lat_ = 1e18;
    max_lon_ = max_lat_ = -1e18;
    for (const auto& poly : polys_) {
        min_lon_ = std::min(min_lon_, poly.min_lon);
        max_lon_ = std::max(max_lon_, poly.max_lon);
        min_lat_ = std::min(min_lat_, poly.min_lat);
        max_lat_ = std::max(max_lat_, poly.max_lat);
    }
    if (max_lon_ <= min_lon_) max_lon_ = min_lon_ + 1e-9;
    if (max_lat_ <= min_lat_) max_lat_ = min_lat_ + 1e-9;

    cells_.assign(static_cast<size_t>(nx_) * ny_, {});
    for (size_t idx = 0; idx < polys_.size(); ++idx) {
        const auto& poly = polys_[idx];
        int x0 = cell_x(poly.min_lon), x1 = cell_x(poly.max_lon);
        int y0 = cell_y(poly.min_lat), y1 = cell_y(poly.max_lat);
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                cells_[static_cast<size_t>(y) * nx_ + x].push_back(static_cast<int>(idx));
    }
}

int TractIndex::cell_x(double lon) const {
    double t = (lon - min_lon_) / (max_lon_ - min_lon_);
    int c = static_cast<int>(t * nx_);
    return std::clamp(c, 0, nx_ - 1);
}

int TractIndex::cell_y(double lat) const {
    double t = (lat - min_lat_) / (max_lat_ - min_lat_);
    int c = static_cast<int>(t * ny_);
    return std::clamp(c, 0, ny_ - 1);
}

std::vector<const TractPolygon*> TractIndex::candidates(const GeoPoint& p) const {
    if (polys_.empty()) return {};
    if (p.lon < min_lon_ || p.lon > max_lon_ || p.lat < min_lat_ || p.lat > max_lat_) return {};
    const auto& cell = cells_[static_cast<size_t>(cell_y(p.lat)) * nx_ + cell_x(p.lon)];
    std::vector<const TractPolygon*> out;
    out.reserve(cell.size());
    for (int idx : cell) {
        const auto& poly = polys_[idx];
        if (p.lon >= poly.min_lon && p.lon <= poly.max_lon && p.lat >= poly.min_lat &&
            p.lat <= poly.max_lat)
            out.push_back(&poly);
    }
    return out;
}

std::optional<std::string> locate(const GeoPoint& p, const TractIndex& index) {
    std::optional<std::string> best;
    for (const TractPolygon* poly : index.candidates(p)) {
        if (!point_in_polygon(p, *poly)) continue;
        if (!best || poly->tract_id < *best) best = poly->tract_id;
    }
    return best;
}

std::vector<TractAggregate> tract_medians(const std::vector<Listing>& geolocated,
                                          const TractIndex& index,
                                          const indicators::QuintileBreaks& breaks,
                                          std::size_t min_count, std::size_t* unlocated) {
    std::map<std::string, std::vector<double>> by_tract;
    std::size_t missed = 0;
    for (const auto& l : geolocated) {
        if (!l.location || !l.rent_per_sqft) {
            ++missed;
            continue;
        }
        auto tract = locate(*l.location, index);
        if (!tract) {
            ++missed;
            continue;
        }
        by_tract[*tract].push_back(*l.rent_per_sqft);
    }
    if (unlocated) *unlocated = missed;

    std::vector<TractAggregate> out;
    for (auto& [tract_id, rpsfs] : by_tract) {
        if (rpsfs.size() < min_count) continue;
        TractAggregate agg;
        agg.tract_id = tract_id;
        agg.listing_count = rpsfs.size();
        agg.median_rpsf = pipeline::percentile_of(std::move(rpsfs), 50.0);
        agg.quintile = indicators::assign_quintile(agg.median_rpsf, breaks);
        out.push_back(std::move(agg));
    }
    return out;
}

namespace {

json polygon_coordinates(const std::vector<const TractPolygon*>& parts) {
    // one part -> Polygon, several -> MultiPolygon
    auto rings_json = [](const TractPolygon& poly) {
        json rings = json::array();
        for (const auto& ring : poly.rings) {
            json pts = json::array();
            for (const auto& pt : ring.pts) pts.push_back(json::array({pt[0], pt[1]}));
            rings.push_back(std::move(pts));
        }
        return rings;
    };
    if (parts.size() == 1) return rings_json(*parts[0]);
    json multi = json::array();
    for (const TractPolygon* poly : parts) multi.push_back(rings_json(*poly));
    return multi;
}

}  // namespace

std::string export_tracts_geojson(const std::vector<TractAggregate>& aggregates,
                                  const TractIndex& index) {
    std::map<std::string, std::vector<const TractPolygon*>> parts;
    for (const auto& poly : index.polygons()) parts[poly.tract_id].push_back(&poly);

    std::map<std::string, const TractAggregate*> by_id;
    for (const auto& agg : aggregates) by_id[agg.tract_id] = &agg;

    json features = json::array();
    for (const auto& [tract_id, agg] : by_id) {
        json feature;
        feature["type"] = "Feature";
        json props;
        props["tract_id"] = tract_id;
        props["median_rpsf"] = agg->median_rpsf;
        props["listing_count"] = agg->listing_count;
        props["quintile"] = agg->quintile;
        feature["properties"] = std::move(props);
        json geom;
        auto it = parts.find(tract_id);
        if (it != parts.end()) {
            geom["type"] = it->second.size() == 1 ? "Polygon" : "MultiPolygon";
            geom["coordinates"] = polygon_coordinates(it->second);
        } else {
            geom = nullptr;
        }
        feature["geometry"] = std::move(geom);
        features.push_back(std::move(feature));
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

std::string export_points_geojson(const std::vector<Listing>& geolocated,
                                  const indicators::QuintileBreaks& breaks) {
    json features = json::array();
    for (const auto& l : geolocated) {
        if (!l.location) continue;
        json feature;
        feature["type"] = "Feature";
        json geom;
        geom["type"] = "Point";
        geom["coordinates"] = json::array({l.location->lon, l.location->lat});
        feature["geometry"] = std::move(geom);
        json props;
        if (l.rent) props["rent"] = *l.rent;
        if (l.sqft) props["sqft"] = *l.sqft;
        if (l.rent_per_sqft) {
            props["rpsf"] = *l.rent_per_sqft;
            props["quintile"] = indicators::assign_quintile(*l.rent_per_sqft, breaks);
        }
        feature["properties"] = std::move(props);
        features.push_back(std::move(feature));
    }
    json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

}  // namespace rentscope::geo
