#include <doctest.h>

#include <sstream>

#include "rentscope/errors.hpp"
#include "rentscope/records.hpp"

using namespace rentscope;

namespace {

RawListing sample() {
    RawListing l;
    l.listing_id = "4491000001";
    l.region = "testville";
    l.posted_at = *parse_stamp("2014-06-02T09:15:00");
    l.title = "Sunny 2BR near Alder Park";
    l.rent = 1295;
    l.sqft = 900;
    l.bedrooms = 2;
    l.location = GeoPoint{45.5231, -122.6820};
    l.url = "http://example.test/apa/4491000001.html";
    l.collected_at = *parse_stamp("2014-06-10T08:00:00Z");
    return l;
}

}  // namespace

TEST_SUITE("records") {

TEST_CASE("line round-trip preserves every field") {
    RawListing l = sample();
    RawListing back = records::from_line(records::to_line(l));
    CHECK(back.listing_id == l.listing_id);
    CHECK(back.region == l.region);
    CHECK(back.posted_at == l.posted_at);
    CHECK(back.title == l.title);
    CHECK(back.rent == l.rent);
    CHECK(back.sqft == l.sqft);
    CHECK(back.bedrooms == l.bedrooms);
    REQUIRE(back.location.has_value());
    CHECK(back.location->lat == l.location->lat);
    CHECK(back.location->lon == l.location->lon);
    CHECK(back.url == l.url);
    CHECK(back.collected_at == l.collected_at);
}

TEST_CASE("serialization is deterministic") {
    RawListing l = sample();
    CHECK(records::to_line(l) == records::to_line(l));
    // absent optionals leave no key behind
    RawListing sparse = sample();
    sparse.rent.reset();
    sparse.location.reset();
    std::string line = records::to_line(sparse);
    CHECK(line.find("rent") == std::string::npos);
    CHECK(line.find("latitude") == std::string::npos);
    CHECK(records::from_line(line).rent == std::nullopt);
}

TEST_CASE("stream round-trip keeps order, skips blank lines") {
    std::vector<RawListing> in;
    for (int i = 0; i < 5; ++i) {
        RawListing l = sample();
        l.listing_id = "900000000" + std::to_string(i);
        in.push_back(l);
    }
    std::ostringstream out;
    records::write_records(out, in);
    std::string text = out.str() + "\n\n";  // trailing blanks are harmless
    std::istringstream is(text);
    auto back = records::read_records(is);
    REQUIRE(back.size() == in.size());
    for (size_t i = 0; i < in.size(); ++i) CHECK(back[i].listing_id == in[i].listing_id);
}

TEST_CASE("rejects structurally bad lines") {
    CHECK_THROWS_AS(records::from_line("not json"), DataError);
    CHECK_THROWS_AS(records::from_line("[1,2]"), DataError);
    CHECK_THROWS_AS(records::from_line("{}"), DataError);  // no listing_id
    CHECK_THROWS_AS(records::from_line(R"({"listing_id":""})"), DataError);
}

TEST_CASE("rejects contract violations") {
    std::string base =
        R"("listing_id":"1","region":"r","posted_at":"2014-06-02","collected_at":"2014-06-10","url":"u")";
    CHECK_NOTHROW(records::from_line("{" + base + "}"));
    CHECK_THROWS_AS(records::from_line("{" + base + R"(,"rent":-5})"), DataError);
    CHECK_THROWS_AS(records::from_line("{" + base + R"(,"sqft":0})"), DataError);
    CHECK_THROWS_AS(records::from_line("{" + base + R"(,"bedrooms":-1})"), DataError);
    CHECK_THROWS_AS(records::from_line("{" + base + R"(,"latitude":45.5})"), DataError);
    CHECK_THROWS_AS(records::from_line("{" + base + R"(,"latitude":95.0,"longitude":10.0})"),
                    DataError);
    CHECK_THROWS_AS(records::from_line(R"({"listing_id":"1","posted_at":"junk"})"), DataError);
}

TEST_CASE("read errors carry line numbers") {
    std::istringstream is(
        "{\"listing_id\":\"a\",\"region\":\"r\",\"posted_at\":\"2014-06-02\","
        "\"collected_at\":\"2014-06-02\",\"url\":\"u\"}\n"
        "not json\n");
    try {
        records::read_records(is);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

}  // TEST_SUITE
