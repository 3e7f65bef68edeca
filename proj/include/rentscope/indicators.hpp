#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rentscope/listing.hpp"
#include "rentscope/refdata.hpp"

namespace rentscope::indicators {

// Appendix-A-shaped row. Medians are unrounded; the two indicator columns
// carry display rounding (proportion to 2 decimals, power to whole ft²).
struct RegionReport {
    std::string area_id;
    double median_rent = 0;
    double median_sqft = 0;
    double median_rpsf = 0;
    std::optional<double> rent_proportion;
    std::optional<long long> rental_power;
    std::size_t listing_count = 0;
};

RegionReport region_summary(const std::string& area_id, const std::vector<Listing>& listings,
                            const refdata::AcsRecord* acs, double national_median_rent,
                            std::vector<std::string>* diagnostics = nullptr);

// Proportion of listings at or below the area FMR, per bedrooms 1..4 plus a
// pooled column where each listing meets its own bedrooms' FMR.
struct FmrReport {
    std::string area_id;
    std::array<std::optional<double>, 5> by_bedrooms;  // index 1..4 used
    std::optional<double> pooled;
};

FmrReport fmr_proportions(const std::string& area_id, const std::vector<Listing>& listings,
                          const refdata::FmrTable& fmr,
                          std::vector<std::string>* diagnostics = nullptr);

// Corpus median rent over HUD median rent, per area x bedrooms.
struct RatioReport {
    std::string area_id;
    std::array<std::optional<double>, 5> by_bedrooms;  // index 1..4 used
};

struct RatioMeans {
    std::array<std::optional<double>, 5> by_bedrooms;
    std::array<std::size_t, 5> counts{};
};

std::pair<std::vector<RatioReport>, RatioMeans> hud_ratios(
    const std::map<std::pair<std::string, int>, double>& corpus_medians,
    const refdata::HudTable& hud);

// Median rent per area x bedrooms over listings with that bedroom count.
std::map<std::pair<std::string, int>, double> median_rent_cells(
    const std::map<std::string, std::vector<Listing>>& by_area);

struct CorrelationResult {
    int bedrooms = 0;
    double r = 0;
    double p_value = 1;
    std::size_t n = 0;
};

// Pearson r with a two-sided p from the t transform, t = r*sqrt((n-2)/(1-r^2))
// on n-2 degrees of freedom.
CorrelationResult correlate(const std::vector<std::pair<double, double>>& pairs);

// Exposed for direct verification against reference values.
double regularized_ibeta(double a, double b, double x);
double students_t_two_sided_p(double t, double df);

struct WeekdayEntry {
    std::optional<double> median_rpsf;
    double mean_count = 0;
    std::size_t listings = 0;
};

// Seven entries, index 0 = Monday. Mean count divides by the number of
// distinct calendar dates of that weekday inside the corpus posting span.
struct WeekdayProfile {
    std::array<WeekdayEntry, 7> days;
};

WeekdayProfile weekday_profile(const std::vector<Listing>& listings);

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0;
};

// Gaussian KDE with the Silverman rule-of-thumb bandwidth
// h = 0.9 * min(sigma, IQR/1.34) * n^(-1/5), population sigma.
DensityCurve density_profile(const std::vector<double>& values, std::size_t grid_points = 512,
                             std::optional<std::pair<double, double>> range = std::nullopt);

struct QuintileBreaks {
    std::array<double, 4> cuts{};  // 20/40/60/80th percentiles
};

QuintileBreaks quintile_breaks(std::vector<double> values);
int assign_quintile(double value, const QuintileBreaks& breaks);  // 1..5, inclusive upper edges

}  // namespace rentscope::indicators
