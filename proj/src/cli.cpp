#include "rentscope/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "rentscope/csvio.hpp"
#include "rentscope/errors.hpp"
#include "rentscope/extractor.hpp"
#include "rentscope/fetcher.hpp"
#include "rentscope/geo.hpp"
#include "rentscope/indicators.hpp"
#include "rentscope/pipeline.hpp"
#include "rentscope/records.hpp"
#include "rentscope/refdata.hpp"
#include "rentscope/svg.hpp"

namespace rentscope::cli {

namespace {

// shortest round-trip formatting keeps data columns deterministic
std::string num_str(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::vector<Listing> read_listings(const std::string& path) {
    std::vector<Listing> out;
    for (auto& raw : records::read_records_file(path)) out.push_back(Listing::from_raw(raw));
    return out;
}

void write_text_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << bytes;
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

void write_csv_output(const std::string& path, const csv::Table& table) {
    std::ostringstream buf;
    csv::write(buf, table);
    write_text_output(path, buf.str());
}

void print_diagnostics(const std::vector<std::string>& diagnostics) {
    for (const auto& d : diagnostics) std::cerr << d << '\n';
}

// region -> area grouping used by every area-level report
struct AreaGroups {
    std::map<std::string, std::vector<Listing>> by_area;
    std::map<std::string, std::size_t> listings_per_region;
    std::size_t joined = 0;
    std::size_t unmapped = 0;
};

AreaGroups group_by_area(const std::vector<Listing>& listings, const refdata::Crosswalk& cw) {
    AreaGroups g;
    for (const auto& l : listings) {
        ++g.listings_per_region[l.region];
        auto area = refdata::resolve_region(cw, l.region);
        if (!area) {
            ++g.unmapped;
            continue;
        }
        ++g.joined;
        g.by_area[*area].push_back(l);
    }
    std::cerr << "joined " << g.joined << " listings, " << g.unmapped << " unmapped of "
              << listings.size() << "\n";
    return g;
}

// ---- crawl ----

struct CrawlArgs {
    fetcher::CrawlConfig config;
    std::string selectors_path = "data/selectors.conf";
};

int cmd_crawl(const CrawlArgs& args) {
    args.config.validate();
    auto selectors = extractor::SelectorSet::load_file(args.selectors_path);
    fetcher::SnapshotStore store(args.config.snapshot_dir);
    fetcher::Fetcher fetch(args.config);

    std::size_t total = 0;
    for (const auto& region : args.config.regions) {
        std::vector<std::string> diagnostics;
        std::size_t n = fetcher::crawl_region(region, args.config, store, selectors, fetch,
                                              &diagnostics);
        print_diagnostics(diagnostics);
        std::cerr << "crawled " << region << ": " << n << " new snapshots\n";
        total += n;
    }
    std::cout << total << "\n";
    return 0;
}

// ---- extract ----

struct ExtractArgs {
    std::string snapshot_dir;
    std::string selectors_path = "data/selectors.conf";
    std::string out;
    std::vector<std::string> regions;
};

int cmd_extract(const ExtractArgs& args) {
    auto selectors = extractor::SelectorSet::load_file(args.selectors_path);
    fetcher::SnapshotStore store(args.snapshot_dir);

    std::vector<Snapshot> snapshots;
    if (args.regions.empty()) {
        snapshots = store.load_all();
    } else {
        for (const auto& region : args.regions) {
            auto batch = store.load_region(region);
            snapshots.insert(snapshots.end(), std::make_move_iterator(batch.begin()),
                             std::make_move_iterator(batch.end()));
        }
    }

    const auto& listing_probe = selectors.listing_rules.at("page");
    std::vector<RawListing> out;
    std::size_t skipped_index = 0, rejected = 0, unparseable = 0;
    for (const auto& snap : snapshots) {
        if (!snap.parseable()) {
            ++unparseable;
            continue;
        }
        html::Document doc = html::parse(snap.body);
        if (!listing_probe.selector.select_first(*doc.root)) {
            ++skipped_index;  // index pages and anything else non-listing
            continue;
        }
        try {
            out.push_back(extractor::parse_listing(snap, selectors));
        } catch (const DataError& e) {
            ++rejected;
            std::cerr << e.what() << "\n";
        }
    }
    std::cerr << "extracted " << out.size() << " records (" << skipped_index
              << " non-listing pages, " << rejected << " rejected, " << unparseable
              << " unparseable)\n";

    std::ostringstream buf;
    records::write_records(buf, out);
    write_text_output(args.out, buf.str());
    return 0;
}

// ---- clean ----

struct CleanArgs {
    std::string in;
    std::string stage;
    std::string out;
    bool report = false;
    bool fixed_bounds = false;
    double p_low = 0.2;
    double p_high = 99.8;
};

csv::Table stage_report_table(const pipeline::StageSet& stages) {
    csv::Table t;
    t.header = {"stage",     "regions",  "listings", "median_rent", "median_sqft",
                "median_rpsf", "mean_rpsf", "rpsf_iqr", "rpsf_sd",     "mean_bedrooms"};
    auto add = [&](const std::vector<Listing>& listings, const std::string& name) {
        pipeline::StageStats s = pipeline::stage_stats(listings, name);
        auto opt = [](const std::optional<double>& v) { return v ? num_str(*v) : std::string(); };
        t.rows.push_back({s.stage, std::to_string(s.regions), std::to_string(s.listings),
                          opt(s.median_rent), opt(s.median_sqft), opt(s.median_rpsf),
                          opt(s.mean_rpsf), opt(s.rpsf_iqr), opt(s.rpsf_sd),
                          opt(s.mean_bedrooms)});
    };
    add(stages.original, "original");
    add(stages.unique, "unique");
    add(stages.thorough, "thorough");
    add(stages.filtered, "filtered");
    add(stages.geolocated, "geolocated");
    return t;
}

int cmd_clean(const CleanArgs& args) {
    if (!args.stage.empty() && args.report)
        throw UsageError("clean: choose either --stage or --report, not both");
    if (args.stage.empty() && !args.report)
        throw UsageError("clean: nothing to do, pass --stage or --report");
    if (args.p_low < 0 || args.p_high > 100 || args.p_low >= args.p_high)
        throw UsageError("clean: need 0 <= p-low < p-high <= 100");

    std::vector<Listing> original = read_listings(args.in);
    std::optional<pipeline::FilterBounds> fixed;
    if (args.fixed_bounds) fixed = pipeline::FilterBounds::published_2014();
    pipeline::StageSet stages =
        pipeline::run_pipeline(std::move(original), fixed, args.p_low, args.p_high);
    std::cerr << "bounds: rent [" << num_str(stages.bounds.rent_min) << ", "
              << num_str(stages.bounds.rent_max) << "] sqft [" << num_str(stages.bounds.sqft_min)
              << ", " << num_str(stages.bounds.sqft_max) << "] rpsf ["
              << num_str(stages.bounds.rpsf_min) << ", " << num_str(stages.bounds.rpsf_max)
              << "]\n";

    if (args.report) {
        write_csv_output(args.out, stage_report_table(stages));
        return 0;
    }

    const std::vector<Listing>* stage = nullptr;
    if (args.stage == "unique") stage = &stages.unique;
    else if (args.stage == "thorough") stage = &stages.thorough;
    else if (args.stage == "filtered") stage = &stages.filtered;
    else if (args.stage == "geolocated") stage = &stages.geolocated;
    else throw UsageError("clean: unknown stage '" + args.stage + "'");

    std::vector<RawListing> raws(stage->begin(), stage->end());
    std::ostringstream buf;
    records::write_records(buf, raws);
    write_text_output(args.out, buf.str());
    return 0;
}

// ---- report ----

struct ReportArgs {
    std::string in;
    std::string crosswalk;
    std::string acs;
    std::string out;
    double national_median_rent = 0;  // 0 means compute from corpus
    bool sampled_only = false;
};

int cmd_report(const ReportArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    auto cw = refdata::load_crosswalk(args.crosswalk);
    std::vector<std::string> warnings;
    auto acs = refdata::load_acs(args.acs, &warnings);
    print_diagnostics(warnings);

    AreaGroups groups = group_by_area(listings, cw);

    double national = args.national_median_rent;
    if (national <= 0) {
        std::vector<double> rents;
        for (const auto& l : listings)
            if (l.rent) rents.push_back(static_cast<double>(*l.rent));
        if (rents.empty()) throw DataError("report: no rents in corpus");
        national = pipeline::percentile_of(std::move(rents), 50.0);
        std::cerr << "national median rent: " << num_str(national) << "\n";
    }

    std::set<std::string> keep;
    if (args.sampled_only) keep = refdata::sampled_areas(cw, acs, groups.listings_per_region);

    csv::Table t;
    t.header = {"area_id",        "median_rent",  "median_sqft",  "median_rpsf",
                "rent_proportion", "rental_power", "listing_count"};
    std::vector<std::string> diagnostics;
    for (const auto& [area_id, area_listings] : groups.by_area) {
        if (args.sampled_only && !keep.count(area_id)) continue;
        auto rep = indicators::region_summary(area_id, area_listings, acs.lookup(area_id),
                                              national, &diagnostics);
        t.rows.push_back({rep.area_id, num_str(rep.median_rent), num_str(rep.median_sqft),
                          num_str(rep.median_rpsf),
                          rep.rent_proportion ? fixed2(*rep.rent_proportion) : std::string(),
                          rep.rental_power ? std::to_string(*rep.rental_power) : std::string(),
                          std::to_string(rep.listing_count)});
    }
    print_diagnostics(diagnostics);
    write_csv_output(args.out, t);
    return 0;
}

// ---- affordability ----

struct AffordabilityArgs {
    std::string in;
    std::string crosswalk;
    std::string fmr;
    std::string out;
};

int cmd_affordability(const AffordabilityArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    auto cw = refdata::load_crosswalk(args.crosswalk);
    std::vector<std::string> warnings;
    auto fmr = refdata::load_fmr(args.fmr, &warnings);
    print_diagnostics(warnings);

    AreaGroups groups = group_by_area(listings, cw);

    csv::Table t;
    t.header = {"area_id", "br1", "br2", "br3", "br4", "all_1_4"};
    std::vector<std::string> diagnostics;
    for (const auto& [area_id, area_listings] : groups.by_area) {
        auto info = cw.areas.find(area_id);
        if (info != cw.areas.end() && info->second.fmr_excluded) {
            diagnostics.push_back("area " + area_id + ": fmr_excluded, skipped");
            continue;
        }
        auto rep = indicators::fmr_proportions(area_id, area_listings, fmr, &diagnostics);
        auto cell = [&](const std::optional<double>& v) {
            return v ? fixed2(*v) : std::string();
        };
        t.rows.push_back({rep.area_id, cell(rep.by_bedrooms[1]), cell(rep.by_bedrooms[2]),
                          cell(rep.by_bedrooms[3]), cell(rep.by_bedrooms[4]), cell(rep.pooled)});
    }
    print_diagnostics(diagnostics);
    write_csv_output(args.out, t);
    return 0;
}

// ---- ratios ----

struct RatiosArgs {
    std::string in;
    std::string crosswalk;
    std::string hud;
    std::string out;
    std::string correlation_out;
};

int cmd_ratios(const RatiosArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    auto cw = refdata::load_crosswalk(args.crosswalk);
    std::vector<std::string> warnings;
    auto hud = refdata::load_hud_medians(args.hud, &warnings);
    print_diagnostics(warnings);

    AreaGroups groups = group_by_area(listings, cw);
    auto cells = indicators::median_rent_cells(groups.by_area);
    auto [reports, means] = indicators::hud_ratios(cells, hud);

    csv::Table t;
    t.header = {"area_id", "br1", "br2", "br3", "br4"};
    auto cell = [&](const std::optional<double>& v) { return v ? fixed2(*v) : std::string(); };
    for (const auto& rep : reports)
        t.rows.push_back({rep.area_id, cell(rep.by_bedrooms[1]), cell(rep.by_bedrooms[2]),
                          cell(rep.by_bedrooms[3]), cell(rep.by_bedrooms[4])});
    t.rows.push_back({"arithmetic_mean", cell(means.by_bedrooms[1]), cell(means.by_bedrooms[2]),
                      cell(means.by_bedrooms[3]), cell(means.by_bedrooms[4])});
    write_csv_output(args.out, t);

    if (!args.correlation_out.empty()) {
        csv::Table c;
        c.header = {"bedrooms", "r", "p_value", "n"};
        for (int b = 1; b <= 4; ++b) {
            std::vector<std::pair<double, double>> pairs;
            for (const auto& [key, corpus_median] : cells) {
                if (key.second != b) continue;
                auto hud_median = hud.lookup(key.first, b);
                if (hud_median) pairs.emplace_back(corpus_median, *hud_median);
            }
            if (pairs.size() < 3) {
                std::cerr << "bedrooms " << b << ": too few pairs for correlation\n";
                continue;
            }
            auto res = indicators::correlate(pairs);
            c.rows.push_back({std::to_string(b), num_str(res.r), num_str(res.p_value),
                              std::to_string(res.n)});
        }
        write_csv_output(args.correlation_out, c);
    }
    return 0;
}

// ---- weekday ----

struct WeekdayArgs {
    std::string in;
    std::string out;
};

int cmd_weekday(const WeekdayArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    auto profile = indicators::weekday_profile(listings);

    static const char* kDays[7] = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                                   "Friday", "Saturday", "Sunday"};
    csv::Table t;
    t.header = {"day", "median_rpsf", "mean_count", "listings"};
    for (int w = 0; w < 7; ++w) {
        const auto& e = profile.days[w];
        t.rows.push_back({kDays[w], e.median_rpsf ? fixed2(*e.median_rpsf) : std::string(),
                          fixed2(e.mean_count), std::to_string(e.listings)});
    }
    write_csv_output(args.out, t);
    return 0;
}

// ---- density ----

struct DensityArgs {
    std::string in;
    std::string out;
    std::size_t grid_points = 512;
    std::vector<std::string> regions;  // empty means every region present
};

int cmd_density(const DensityArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    std::map<std::string, std::vector<double>> by_region;
    for (const auto& l : listings)
        if (l.rent_per_sqft) by_region[l.region].push_back(*l.rent_per_sqft);

    csv::Table t;
    t.header = {"region", "rpsf", "density"};
    for (const auto& [region, values] : by_region) {
        if (!args.regions.empty() &&
            std::find(args.regions.begin(), args.regions.end(), region) == args.regions.end())
            continue;
        std::set<double> distinct(values.begin(), values.end());
        if (distinct.size() < 2) {
            std::cerr << "region " << region << ": degenerate rpsf distribution, skipped\n";
            continue;
        }
        auto curve = indicators::density_profile(values, args.grid_points);
        for (size_t j = 0; j < curve.grid.size(); ++j)
            t.rows.push_back({region, num_str(curve.grid[j]), num_str(curve.density[j])});
    }
    if (t.rows.empty()) throw DataError("density: no region has enough data");
    write_csv_output(args.out, t);
    return 0;
}

// ---- map ----

struct MapArgs {
    std::string in;
    std::string tracts;
    std::string out;
    bool points = false;
    std::size_t min_count = 1;
};

int cmd_map(const MapArgs& args) {
    std::vector<Listing> listings = read_listings(args.in);
    std::vector<double> rpsfs;
    for (const auto& l : listings)
        if (l.rent_per_sqft) rpsfs.push_back(*l.rent_per_sqft);
    if (rpsfs.empty()) throw DataError("map: no rent/sqft data in corpus");
    auto breaks = indicators::quintile_breaks(std::move(rpsfs));

    if (args.points) {
        write_text_output(args.out, geo::export_points_geojson(listings, breaks));
        return 0;
    }
    if (args.tracts.empty()) throw UsageError("map: --tracts required unless --points");

    std::vector<std::string> diagnostics;
    auto polygons = geo::load_tracts_geojson(args.tracts, &diagnostics);
    print_diagnostics(diagnostics);
    geo::TractIndex index(std::move(polygons));

    std::size_t unlocated = 0;
    auto aggregates = geo::tract_medians(listings, index, breaks, args.min_count, &unlocated);
    std::cerr << "located " << (listings.size() - unlocated) << " listings in "
              << aggregates.size() << " tracts, " << unlocated << " unlocated\n";
    write_text_output(args.out, geo::export_tracts_geojson(aggregates, index));
    return 0;
}

// ---- chart ----

struct ChartArgs {
    std::string in;
    std::string out;
    std::string kind = "bar";
    std::string x_column;
    std::string y_column;
    std::string title;
    bool identity_line = false;
};

int resolve_column(const csv::Table& t, const std::string& name, int fallback) {
    if (name.empty()) return fallback;
    int by_name = t.column(name);
    if (by_name >= 0) return by_name;
    int idx = 0;
    auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), idx);
    if (ec == std::errc{} && p == name.data() + name.size() && idx >= 0 &&
        static_cast<size_t>(idx) < t.header.size())
        return idx;
    throw UsageError("chart: no column '" + name + "'");
}

int cmd_chart(const ChartArgs& args) {
    csv::Table data = csv::read_file(args.in);

    svg::ChartSpec spec;
    if (args.kind == "bar") spec.kind = svg::ChartKind::Bar;
    else if (args.kind == "scatter") spec.kind = svg::ChartKind::Scatter;
    else if (args.kind == "line") spec.kind = svg::ChartKind::Line;
    else throw UsageError("chart: unknown kind '" + args.kind + "'");

    spec.x_column = resolve_column(data, args.x_column, 0);
    spec.y_column = resolve_column(data, args.y_column, 1);
    spec.title = args.title;
    spec.identity_line = args.identity_line;
    if (spec.x_column < static_cast<int>(data.header.size()))
        spec.x_label = data.header[spec.x_column];
    if (spec.y_column < static_cast<int>(data.header.size()))
        spec.y_label = data.header[spec.y_column];

    write_text_output(args.out, svg::render_chart(data, spec));
    return 0;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
    CLI::App app{"rental listing collection and market analysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read option defaults from a config file");

    CrawlArgs crawl_args;
    auto* crawl = app.add_subcommand("crawl", "fetch index and detail pages into a snapshot dir");
    crawl->add_option("--region", crawl_args.config.regions, "region identifier (repeatable)")
        ->required();
    crawl->add_option("--max-pages", crawl_args.config.max_pages_per_region,
                      "page cap per region");
    crawl->add_option("--interval-ms", crawl_args.config.min_request_interval_ms,
                      "minimum per-host request spacing");
    crawl->add_option("--timeout-ms", crawl_args.config.timeout_ms, "request timeout");
    crawl->add_option("--user-agent", crawl_args.config.user_agent, "user agent string");
    crawl->add_option("--out", crawl_args.config.snapshot_dir, "snapshot directory");
    crawl->add_option("--index-url-template", crawl_args.config.index_url_template,
                      "index url, {region} expands");
    crawl->add_option("--selectors", crawl_args.selectors_path, "selector config file");
    crawl->add_flag("--no-robots",
                    [&](std::int64_t) { crawl_args.config.respect_robots = false; },
                    "skip robots.txt checks");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "parse snapshots into listing records");
    extract->add_option("--snapshots", extract_args.snapshot_dir, "snapshot directory")
        ->required();
    extract->add_option("--selectors", extract_args.selectors_path, "selector config file");
    extract->add_option("--out", extract_args.out, "output records file (default stdout)");
    extract->add_option("--region", extract_args.regions, "restrict to regions (repeatable)");

    CleanArgs clean_args;
    auto* clean = app.add_subcommand("clean", "run the five-stage cleaning pipeline");
    clean->add_option("--in", clean_args.in, "input records file")->required();
    clean->add_option("--stage", clean_args.stage,
                      "materialize one stage: unique|thorough|filtered|geolocated");
    clean->add_flag("--report", clean_args.report, "emit per-stage descriptive statistics CSV");
    clean->add_option("--out", clean_args.out, "output file (default stdout)");
    clean->add_flag("--fixed-bounds", clean_args.fixed_bounds,
                    "use the published 2014 filter bounds");
    clean->add_option("--p-low", clean_args.p_low, "lower percentile rank for bounds");
    clean->add_option("--p-high", clean_args.p_high, "upper percentile rank for bounds");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "regional summary indicators per area");
    report->add_option("--in", report_args.in, "filtered records file")->required();
    report->add_option("--crosswalk", report_args.crosswalk, "region to area crosswalk")
        ->required();
    report->add_option("--acs", report_args.acs, "ACS income/population CSV")->required();
    report->add_option("--out", report_args.out, "output CSV (default stdout)");
    report->add_option("--national-median-rent", report_args.national_median_rent,
                       "override the corpus-computed national median rent");
    report->add_flag("--sampled-only", report_args.sampled_only,
                     "restrict to the top-population/top-count sample");

    AffordabilityArgs afford_args;
    auto* afford = app.add_subcommand("affordability", "FMR proportion report per area");
    afford->add_option("--in", afford_args.in, "filtered records file")->required();
    afford->add_option("--crosswalk", afford_args.crosswalk, "region to area crosswalk")
        ->required();
    afford->add_option("--fmr", afford_args.fmr, "FMR CSV")->required();
    afford->add_option("--out", afford_args.out, "output CSV (default stdout)");

    RatiosArgs ratios_args;
    auto* ratios = app.add_subcommand("ratios", "corpus/HUD median rent ratios per area");
    ratios->add_option("--in", ratios_args.in, "filtered records file")->required();
    ratios->add_option("--crosswalk", ratios_args.crosswalk, "region to area crosswalk")
        ->required();
    ratios->add_option("--hud", ratios_args.hud, "HUD median rent CSV")->required();
    ratios->add_option("--out", ratios_args.out, "output CSV (default stdout)");
    ratios->add_option("--correlation-out", ratios_args.correlation_out,
                       "also write per-bedrooms Pearson correlations");

    WeekdayArgs weekday_args;
    auto* weekday = app.add_subcommand("weekday", "median rpsf and mean count by weekday");
    weekday->add_option("--in", weekday_args.in, "records file")->required();
    weekday->add_option("--out", weekday_args.out, "output CSV (default stdout)");

    DensityArgs density_args;
    auto* density = app.add_subcommand("density", "rent per sqft density curves per region");
    density->add_option("--in", density_args.in, "records file")->required();
    density->add_option("--out", density_args.out, "output CSV (default stdout)");
    density->add_option("--grid-points", density_args.grid_points, "grid resolution");
    density->add_option("--region", density_args.regions, "restrict to regions (repeatable)");

    MapArgs map_args;
    auto* map_cmd = app.add_subcommand("map", "tract medians or listing points as GeoJSON");
    map_cmd->add_option("--in", map_args.in, "geolocated records file")->required();
    map_cmd->add_option("--tracts", map_args.tracts, "census tract polygons GeoJSON");
    map_cmd->add_option("--out", map_args.out, "output GeoJSON (default stdout)");
    map_cmd->add_flag("--points", map_args.points, "emit listing points instead of tracts");
    map_cmd->add_option("--min-count", map_args.min_count,
                        "suppress tracts with fewer listings");

    ChartArgs chart_args;
    auto* chart = app.add_subcommand("chart", "render a report CSV as an SVG chart");
    chart->add_option("--in", chart_args.in, "input CSV")->required();
    chart->add_option("--out", chart_args.out, "output SVG (default stdout)");
    chart->add_option("--kind", chart_args.kind, "bar|scatter|line");
    chart->add_option("--x", chart_args.x_column, "x column name or index");
    chart->add_option("--y", chart_args.y_column, "y column name or index");
    chart->add_option("--title", chart_args.title, "chart title");
    chart->add_flag("--identity-line", chart_args.identity_line,
                    "draw the y = x reference line (scatter)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (crawl->parsed()) return cmd_crawl(crawl_args);
        if (extract->parsed()) return cmd_extract(extract_args);
        if (clean->parsed()) return cmd_clean(clean_args);
        if (report->parsed()) return cmd_report(report_args);
        if (afford->parsed()) return cmd_affordability(afford_args);
        if (ratios->parsed()) return cmd_ratios(ratios_args);
        if (weekday->parsed()) return cmd_weekday(weekday_args);
        if (density->parsed()) return cmd_density(density_args);
        if (map_cmd->parsed()) return cmd_map(map_args);
        if (chart->parsed()) return cmd_chart(chart_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace rentscope::cli
