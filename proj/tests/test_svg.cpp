#include <doctest.h>

#include <string>
#include <vector>

#include "rentscope/errors.hpp"
#include "rentscope/svg.hpp"

using namespace rentscope;
using svg::ChartKind;
using svg::ChartSpec;

namespace {

csv::Table table(std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
    csv::Table t;
    t.header = std::move(header);
    t.rows = std::move(rows);
    return t;
}

std::vector<std::string> attr_values(const std::string& doc, const std::string& needle,
                                     const std::string& attr) {
    std::vector<std::string> out;
    size_t pos = 0;
    while ((pos = doc.find(needle, pos)) != std::string::npos) {
        size_t start = doc.rfind('<', pos);
        size_t end = doc.find('>', pos);
        std::string tag = doc.substr(start, end - start);
        size_t a = tag.find(attr + "=\"");
        if (a != std::string::npos) {
            a += attr.size() + 2;
            out.push_back(tag.substr(a, tag.find('"', a) - a));
        }
        pos = end;
    }
    return out;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("bar heights scale against the tallest bar") {
    // default canvas 800x500, plot height 500-40-50 = 410
    auto t = table({"day", "count"}, {{"tue", "50"}, {"mon", "100"}});
    ChartSpec spec;
    spec.kind = ChartKind::Bar;
    std::string doc = svg::render_chart(t, spec);

    auto heights = attr_values(doc, "fill=\"steelblue\"", "height");
    REQUIRE(heights.size() == 2);
    CHECK(heights[0] == "410.00");  // categories sort, mon first
    CHECK(heights[1] == "205.00");
    CHECK(doc.find(">mon</text>") != std::string::npos);
    CHECK(doc.find(">tue</text>") != std::string::npos);
    CHECK(doc.rfind("</svg>\n") == doc.size() - 7);
}

TEST_CASE("identical input gives identical bytes, row order irrelevant") {
    auto a = table({"day", "count"}, {{"mon", "3"}, {"tue", "7"}, {"wed", "5"}});
    auto b = table({"day", "count"}, {{"wed", "5"}, {"mon", "3"}, {"tue", "7"}});
    ChartSpec spec;
    spec.kind = ChartKind::Bar;
    spec.title = "by day";
    CHECK(svg::render_chart(a, spec) == svg::render_chart(a, spec));
    CHECK(svg::render_chart(a, spec) == svg::render_chart(b, spec));

    ChartSpec sc;
    sc.kind = ChartKind::Scatter;
    auto p = table({"x", "y"}, {{"1", "4"}, {"3", "2"}, {"2", "9"}});
    auto q = table({"x", "y"}, {{"2", "9"}, {"1", "4"}, {"3", "2"}});
    CHECK(svg::render_chart(p, sc) == svg::render_chart(q, sc));
}

TEST_CASE("scatter identity line spans the pooled extent") {
    // plot area x: 70..780, y: 40..450
    auto t = table({"x", "y"}, {{"1", "1"}, {"5", "5"}});
    ChartSpec spec;
    spec.kind = ChartKind::Scatter;
    spec.identity_line = true;
    std::string doc = svg::render_chart(t, spec);
    CHECK(doc.find("stroke-dasharray") != std::string::npos);
    CHECK(doc.find("<line x1=\"70.00\" y1=\"450.00\" x2=\"780.00\" y2=\"40.00\"") !=
          std::string::npos);

    // asymmetric data still gets a 45-degree line over the shared range
    auto skew = table({"x", "y"}, {{"1", "10"}, {"5", "20"}});
    std::string doc2 = svg::render_chart(skew, spec);
    CHECK(doc2.find("<line x1=\"70.00\" y1=\"450.00\" x2=\"780.00\" y2=\"40.00\"") !=
          std::string::npos);

    ChartSpec plain;
    plain.kind = ChartKind::Scatter;
    CHECK(svg::render_chart(t, plain).find("stroke-dasharray") == std::string::npos);
}

TEST_CASE("scatter plots one circle per row") {
    auto t = table({"x", "y"}, {{"1", "2"}, {"2", "3"}, {"3", "5"}});
    ChartSpec spec;
    spec.kind = ChartKind::Scatter;
    std::string doc = svg::render_chart(t, spec);
    size_t circles = 0, pos = 0;
    while ((pos = doc.find("<circle", pos)) != std::string::npos) {
        ++circles;
        ++pos;
    }
    CHECK(circles == 3);
}

TEST_CASE("line chart joins sorted points") {
    auto t = table({"x", "y"}, {{"3", "1"}, {"1", "1"}, {"2", "4"}});
    ChartSpec spec;
    spec.kind = ChartKind::Line;
    std::string doc = svg::render_chart(t, spec);
    // x range 1..3 maps to 70..780, y range 1..4 maps to 450..40
    CHECK(doc.find("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
                   "points=\"70.00,450.00 425.00,40.00 780.00,450.00\"/>") !=
          std::string::npos);
}

TEST_CASE("markup in labels is escaped") {
    auto t = table({"k", "v"}, {{"a<b", "1"}});
    ChartSpec spec;
    spec.kind = ChartKind::Bar;
    spec.title = "rent & \"power\"";
    spec.x_label = "ft²";
    std::string doc = svg::render_chart(t, spec);
    CHECK(doc.find("rent &amp; &quot;power&quot;") != std::string::npos);
    CHECK(doc.find(">a&lt;b</text>") != std::string::npos);
    CHECK(doc.find("ft²") != std::string::npos);
    CHECK(doc.find("a<b") == std::string::npos);
}

TEST_CASE("degenerate tables are rejected") {
    ChartSpec spec;
    CHECK_THROWS_AS(svg::render_chart(table({"a", "b"}, {}), spec), DataError);
    CHECK_THROWS_AS(svg::render_chart(table({"only"}, {{"x"}}), spec), DataError);
    CHECK_THROWS_AS(svg::render_chart(table({"a", "b"}, {{"x", "1"}, {"y"}}), spec), DataError);
    CHECK_THROWS_AS(svg::render_chart(table({"a", "b"}, {{"x", "12kg"}}), spec), DataError);
    CHECK_THROWS_AS(svg::render_chart(table({"a", "b"}, {{"x", ""}}), spec), DataError);

    // all-zero bars still render, flat on the baseline
    std::string doc = svg::render_chart(table({"a", "b"}, {{"x", "0"}}), spec);
    CHECK(doc.find("height=\"0.00\"") != std::string::npos);
}

}  // TEST_SUITE
