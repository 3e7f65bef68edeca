#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rentscope/errors.hpp"
#include "rentscope/refdata.hpp"

using namespace rentscope;
using namespace rentscope::refdata;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::filesystem::temp_directory_path() / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

}  // namespace

TEST_SUITE("refdata") {

TEST_CASE("crosswalk block parsing") {
    Crosswalk cw = parse_crosswalk(
        "# comment\n"
        "region = losangeles\n"
        "region = orangecounty\n"
        "area = los_angeles_ca\n"
        "\n"
        "region = sfbay\n"
        "area = sf_bay_ca\n"
        "kind = CSA\n"
        "\n"
        "region = dallas\n"
        "area = dallas_tx\n"
        "fmr_excluded = true\n",
        "test");
    CHECK(cw.region_to_area.size() == 4);
    CHECK(cw.region_to_area.at("losangeles") == "los_angeles_ca");
    CHECK(cw.region_to_area.at("orangecounty") == "los_angeles_ca");
    CHECK(cw.areas.at("los_angeles_ca").kind == AreaKind::MSA);
    CHECK(cw.areas.at("los_angeles_ca").regions.size() == 2);
    CHECK(cw.areas.at("sf_bay_ca").kind == AreaKind::CSA);
    CHECK_FALSE(cw.areas.at("sf_bay_ca").fmr_excluded);
    CHECK(cw.areas.at("dallas_tx").fmr_excluded);

    CHECK(resolve_region(cw, "sfbay") == "sf_bay_ca");
    CHECK(resolve_region(cw, "nowhere") == std::nullopt);
}

TEST_CASE("crosswalk final block needs no trailing blank line") {
    Crosswalk cw = parse_crosswalk("region = boston\narea = boston_ma", "test");
    CHECK(cw.region_to_area.at("boston") == "boston_ma");
}

TEST_CASE("later block may extend but not contradict an area") {
    Crosswalk cw = parse_crosswalk(
        "region = a1\narea = big\nkind = CSA\n\nregion = a2\narea = big\n", "test");
    CHECK(cw.areas.at("big").regions.size() == 2);
    CHECK(cw.areas.at("big").kind == AreaKind::CSA);

    CHECK_THROWS_AS(parse_crosswalk(
        "region = a1\narea = big\nkind = CSA\n\nregion = a2\narea = big\nkind = MSA\n", "test"),
        DataError);
    CHECK_THROWS_AS(parse_crosswalk(
        "region = a1\narea = big\n\nregion = a2\narea = big\nfmr_excluded = true\n", "test"),
        DataError);
}

TEST_CASE("crosswalk structural errors") {
    // duplicate region anywhere
    CHECK_THROWS_AS(parse_crosswalk("region = x\narea = a\n\nregion = x\narea = b\n", "t"),
                    DataError);
    CHECK_THROWS_AS(parse_crosswalk("region = x\nregion = x\narea = a\n", "t"), DataError);
    // block without area, block without regions
    CHECK_THROWS_AS(parse_crosswalk("region = x\n", "t"), DataError);
    CHECK_THROWS_AS(parse_crosswalk("area = a\n", "t"), DataError);
    // junk
    CHECK_THROWS_AS(parse_crosswalk("region x\narea = a\n", "t"), DataError);
    CHECK_THROWS_AS(parse_crosswalk("region =\narea = a\n", "t"), DataError);
    CHECK_THROWS_AS(parse_crosswalk("color = red\narea = a\nregion = x\n", "t"), DataError);
    CHECK_THROWS_AS(parse_crosswalk("kind = RURAL\narea = a\nregion = x\n", "t"), DataError);
    // empty file
    CHECK_THROWS_AS(parse_crosswalk("\n# nothing\n\n", "t"), DataError);
}

TEST_CASE("fmr table load and lookup") {
    TempFile f("t_fmr.csv",
               "area_id,bedrooms,fmr\n"
               "aa,0,700\naa,1,800\naa,2,1000\naa,3,1400\naa,4,1700\n"
               "bb,2,900\n");
    FmrTable t = load_fmr(f.path.string());
    CHECK(t.lookup("aa", 2) == 1000.0);
    CHECK(t.lookup("bb", 2) == 900.0);
    CHECK(t.lookup("bb", 3) == std::nullopt);
    CHECK(t.lookup("zz", 1) == std::nullopt);
}

TEST_CASE("reference loaders reject structural problems") {
    TempFile missing_col("t_fmr_mc.csv", "area_id,fmr\naa,700\n");
    CHECK_THROWS_AS(load_fmr(missing_col.path.string()), DataError);

    TempFile bad_num("t_fmr_bn.csv", "area_id,bedrooms,fmr\naa,two,700\n");
    CHECK_THROWS_AS(load_fmr(bad_num.path.string()), DataError);

    TempFile bad_range("t_fmr_br.csv", "area_id,bedrooms,fmr\naa,7,700\n");
    CHECK_THROWS_AS(load_fmr(bad_range.path.string()), DataError);

    TempFile neg("t_fmr_neg.csv", "area_id,bedrooms,fmr\naa,2,-5\n");
    CHECK_THROWS_AS(load_fmr(neg.path.string()), DataError);

    TempFile dup("t_fmr_dup.csv", "area_id,bedrooms,fmr\naa,2,900\naa,2,901\n");
    CHECK_THROWS_AS(load_fmr(dup.path.string()), DataError);

    CHECK_THROWS_AS(load_fmr("/nonexistent/fmr.csv"), DataError);

    // hud medians cover bedrooms 1..4 only
    TempFile hud0("t_hud0.csv", "area_id,bedrooms,median_rent\naa,0,700\n");
    CHECK_THROWS_AS(load_hud_medians(hud0.path.string()), DataError);
}

TEST_CASE("empty data section warns instead of failing") {
    TempFile f("t_fmr_empty.csv", "area_id,bedrooms,fmr\n");
    std::vector<std::string> warnings;
    FmrTable t = load_fmr(f.path.string(), &warnings);
    CHECK(t.cells.empty());
    CHECK(warnings.size() == 1);
}

TEST_CASE("acs load and lookup") {
    TempFile f("t_acs.csv",
               "area_id,median_income,population\n"
               "aa,56000,1500000\nbb,47000,300000\n");
    AcsTable t = load_acs(f.path.string());
    REQUIRE(t.lookup("aa") != nullptr);
    CHECK(t.lookup("aa")->median_income == 56000.0);
    CHECK(t.lookup("aa")->population == 1500000);
    CHECK(t.lookup("cc") == nullptr);

    TempFile dup("t_acs_dup.csv", "area_id,median_income,population\naa,1,2\naa,3,4\n");
    CHECK_THROWS_AS(load_acs(dup.path.string()), DataError);
}

TEST_CASE("sampled_areas unions population and listing-count ranks") {
    // six areas, population rank picks the top 3; listing counts pull in a
    // region whose area is small
    std::string cwtext;
    std::string acstext = "area_id,median_income,population\n";
    for (int i = 1; i <= 6; ++i) {
        std::string n = std::to_string(i);
        cwtext += "region = r" + n + "\narea = a" + n + "\n\n";
        acstext += "a" + n + ",50000," + std::to_string(1000000 * (7 - i)) + "\n";
    }
    Crosswalk cw = parse_crosswalk(cwtext, "t");
    TempFile acs("t_acs_sample.csv", acstext);
    AcsTable at = load_acs(acs.path.string());

    std::map<std::string, std::size_t> counts{{"r6", 5000}, {"r5", 10}};
    auto sampled = sampled_areas(cw, at, counts, 3);
    // a1..a3 by population, a5 and a6 by listing volume
    CHECK(sampled == std::set<std::string>{"a1", "a2", "a3", "a5", "a6"});

    // population ties break by area_id; count ties break by region name
    auto all = sampled_areas(cw, at, counts, 6);
    CHECK(all.size() == 6);
}

}  // TEST_SUITE
