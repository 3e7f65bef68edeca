#include "rentscope/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rentscope/errors.hpp"
#include "rentscope/pipeline.hpp"

namespace rentscope::indicators {

using pipeline::percentile;

RegionReport region_summary(const std::string& area_id, const std::vector<Listing>& listings,
                            const refdata::AcsRecord* acs, double national_median_rent,
                            std::vector<std::string>* diagnostics) {
    if (listings.empty()) throw DataError("region_summary: no listings for area " + area_id);

    std::vector<double> rents, sqfts, rpsfs;
    for (const auto& l : listings) {
        if (l.rent) rents.push_back(static_cast<double>(*l.rent));
        if (l.sqft) sqfts.push_back(static_cast<double>(*l.sqft));
        if (l.rent_per_sqft) rpsfs.push_back(*l.rent_per_sqft);
    }
    if (rents.empty() || sqfts.empty() || rpsfs.empty())
        throw DataError("region_summary: area " + area_id + " lacks rent/sqft data");

    RegionReport rep;
    rep.area_id = area_id;
    rep.listing_count = listings.size();
    rep.median_rent = pipeline::percentile_of(rents, 50.0);
    rep.median_sqft = pipeline::percentile_of(sqfts, 50.0);
    rep.median_rpsf = pipeline::percentile_of(rpsfs, 50.0);

    if (acs && acs->median_income > 0) {
        double monthly = acs->median_income / 12.0;
        double prop = rep.median_rent / monthly;
        rep.rent_proportion = std::round(prop * 100.0) / 100.0;
    } else if (diagnostics) {
        diagnostics->push_back("area " + area_id +
                               ": no usable median income, rent proportion omitted");
    }
    if (rep.median_rpsf > 0)
        rep.rental_power = std::llround(national_median_rent / rep.median_rpsf);
    return rep;
}

FmrReport fmr_proportions(const std::string& area_id, const std::vector<Listing>& listings,
                          const refdata::FmrTable& fmr, std::vector<std::string>* diagnostics) {
    FmrReport rep;
    rep.area_id = area_id;

    std::size_t pooled_at_or_below = 0, pooled_total = 0;
    for (int b = 1; b <= 4; ++b) {
        std::size_t total = 0, at_or_below = 0;
        auto limit = fmr.lookup(area_id, b);
        bool have_listings = false;
        for (const auto& l : listings) {
            if (!l.bedrooms || *l.bedrooms != b || !l.rent) continue;
            have_listings = true;
            if (!limit) continue;
            ++total;
            if (static_cast<double>(*l.rent) <= *limit) ++at_or_below;
        }
        if (!limit) {
            if (have_listings && diagnostics)
                diagnostics->push_back("area " + area_id + ": no FMR for " + std::to_string(b) +
                                       "br, bucket skipped");
            continue;
        }
        if (total == 0) continue;
        rep.by_bedrooms[b] = static_cast<double>(at_or_below) / static_cast<double>(total);
        pooled_at_or_below += at_or_below;
        pooled_total += total;
    }
    if (pooled_total > 0)
        rep.pooled = static_cast<double>(pooled_at_or_below) / static_cast<double>(pooled_total);
    return rep;
}

std::map<std::pair<std::string, int>, double> median_rent_cells(
    const std::map<std::string, std::vector<Listing>>& by_area) {
    std::map<std::pair<std::string, int>, double> cells;
    for (const auto& [area_id, listings] : by_area) {
        std::map<int, std::vector<double>> rents;
        for (const auto& l : listings)
            if (l.bedrooms && l.rent && *l.bedrooms >= 1 && *l.bedrooms <= 4)
                rents[*l.bedrooms].push_back(static_cast<double>(*l.rent));
        for (auto& [b, v] : rents) cells[{area_id, b}] = pipeline::percentile_of(std::move(v), 50.0);
    }
    return cells;
}

std::pair<std::vector<RatioReport>, RatioMeans> hud_ratios(
    const std::map<std::pair<std::string, int>, double>& corpus_medians,
    const refdata::HudTable& hud) {
    std::map<std::string, RatioReport> by_area;
    RatioMeans means;
    std::array<double, 5> sums{};

    for (const auto& [key, corpus_median] : corpus_medians) {
        const auto& [area_id, bedrooms] = key;
        if (bedrooms < 1 || bedrooms > 4) continue;
        auto hud_median = hud.lookup(area_id, bedrooms);
        if (!hud_median) continue;
        auto& rep = by_area[area_id];
        rep.area_id = area_id;
        double ratio = corpus_median / *hud_median;
        rep.by_bedrooms[bedrooms] = ratio;
        sums[bedrooms] += ratio;
        ++means.counts[bedrooms];
    }
    for (int b = 1; b <= 4; ++b)
        if (means.counts[b] > 0)
            means.by_bedrooms[b] = sums[b] / static_cast<double>(means.counts[b]);

    std::vector<RatioReport> reports;
    reports.reserve(by_area.size());
    for (auto& [id, rep] : by_area) reports.push_back(std::move(rep));
    return {std::move(reports), means};
}

namespace {

// Continued fraction for the regularized incomplete beta, evaluated with
// Lentz's method.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log1p(-x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double students_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    double x = df / (df + t * t);
    double p = regularized_ibeta(df / 2.0, 0.5, x);
    return std::min(1.0, std::max(0.0, p));
}

CorrelationResult correlate(const std::vector<std::pair<double, double>>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 3) throw DataError("insufficient data for correlation");

    double mx = 0, my = 0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0, sxx = 0, syy = 0;
    for (const auto& [x, y] : pairs) {
        double dx = x - mx, dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("insufficient data for correlation");

    CorrelationResult res;
    res.n = n;
    res.r = sxy / std::sqrt(sxx * syy);
    if (res.r > 1.0) res.r = 1.0;
    if (res.r < -1.0) res.r = -1.0;

    double df = static_cast<double>(n - 2);
    double denom = 1.0 - res.r * res.r;
    if (denom <= 0.0) {
        res.p_value = 0.0;
    } else {
        double t = res.r * std::sqrt(df / denom);
        res.p_value = students_t_two_sided_p(t, df);
    }
    return res;
}

namespace {

// Dates with weekday w in the inclusive span [d0, d1].
std::size_t weekday_occurrences(const CivilDate& d0, const CivilDate& d1, int w) {
    long long span = d1.days_from_epoch() - d0.days_from_epoch() + 1;
    if (span <= 0) return 0;
    long long full = span / 7, rem = span % 7;
    int first = d0.weekday();
    long long extra = 0;
    for (long long k = 0; k < rem; ++k)
        if ((first + k) % 7 == w) ++extra;
    return static_cast<std::size_t>(full + extra);
}

}  // namespace

WeekdayProfile weekday_profile(const std::vector<Listing>& listings) {
    WeekdayProfile profile;
    if (listings.empty()) return profile;

    CivilDate lo = listings.front().posted_at.date;
    CivilDate hi = lo;
    std::array<std::vector<double>, 7> rpsf_by_day;
    std::array<std::size_t, 7> counts{};
    for (const auto& l : listings) {
        const CivilDate& d = l.posted_at.date;
        if (d < lo) lo = d;
        if (hi < d) hi = d;
        int w = d.weekday();
        ++counts[w];
        if (l.rent_per_sqft) rpsf_by_day[w].push_back(*l.rent_per_sqft);
    }
    for (int w = 0; w < 7; ++w) {
        auto& e = profile.days[w];
        e.listings = counts[w];
        if (!rpsf_by_day[w].empty())
            e.median_rpsf = pipeline::percentile_of(std::move(rpsf_by_day[w]), 50.0);
        std::size_t occurrences = weekday_occurrences(lo, hi, w);
        if (occurrences > 0)
            e.mean_count = static_cast<double>(counts[w]) / static_cast<double>(occurrences);
    }
    return profile;
}

DensityCurve density_profile(const std::vector<double>& values, std::size_t grid_points,
                             std::optional<std::pair<double, double>> range) {
    if (grid_points < 2) throw DataError("density_profile: grid needs at least 2 points");
    std::vector<double> v = values;
    std::sort(v.begin(), v.end());
    if (v.empty() || v.front() == v.back()) throw DataError("degenerate distribution");

    const double n = static_cast<double>(v.size());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double sigma = std::sqrt(ss / n);
    double iqr = percentile(v, 75.0) - percentile(v, 25.0);
    double spread = iqr > 0 ? std::min(sigma, iqr / 1.34) : sigma;
    double h = 0.9 * spread * std::pow(n, -0.2);
    if (h <= 0) throw DataError("degenerate distribution");

    double lo = range ? range->first : v.front();
    double hi = range ? range->second : v.back();
    if (hi <= lo) throw DataError("density_profile: empty grid range");

    DensityCurve curve;
    curve.bandwidth = h;
    curve.grid.resize(grid_points);
    curve.density.resize(grid_points);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    const double norm = 1.0 / (n * h * std::sqrt(kTwoPi));
    for (std::size_t j = 0; j < grid_points; ++j) {
        double x = lo + step * static_cast<double>(j);
        curve.grid[j] = x;
        double sum = 0;
        for (double xi : v) {
            double z = (x - xi) / h;
            sum += std::exp(-0.5 * z * z);
        }
        curve.density[j] = norm * sum;
    }
    return curve;
}

QuintileBreaks quintile_breaks(std::vector<double> values) {
    if (values.empty()) throw DataError("quintile_breaks: no data");
    std::sort(values.begin(), values.end());
    QuintileBreaks b;
    b.cuts[0] = percentile(values, 20.0);
    b.cuts[1] = percentile(values, 40.0);
    b.cuts[2] = percentile(values, 60.0);
    b.cuts[3] = percentile(values, 80.0);
    return b;
}

int assign_quintile(double value, const QuintileBreaks& breaks) {
    for (int i = 0; i < 4; ++i)
        if (value <= breaks.cuts[i]) return i + 1;
    return 5;
}

}  // namespace rentscope::indicators
