#include <doctest.h>

#include <sstream>

#include "rentscope/csvio.hpp"
#include "rentscope/errors.hpp"

using namespace rentscope;

TEST_SUITE("csvio") {

TEST_CASE("encode_field quotes only when needed") {
    CHECK(csv::encode_field("plain") == "plain");
    CHECK(csv::encode_field("") == "");
    CHECK(csv::encode_field("a,b") == "\"a,b\"");
    CHECK(csv::encode_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv::encode_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("parse simple table") {
    csv::Table t = csv::parse("a,b,c\n1,2,3\n4,5,6\n");
    REQUIRE(t.header.size() == 3);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "2");
    CHECK(t.rows[1][2] == "6");
    CHECK(t.column("b") == 1);
    CHECK(t.column("zzz") == -1);
}

TEST_CASE("parse quoted fields") {
    csv::Table t = csv::parse("name,note\n\"Smith, Jo\",\"said \"\"ok\"\"\"\nplain,\"multi\nline\"\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == "Smith, Jo");
    CHECK(t.rows[0][1] == "said \"ok\"");
    CHECK(t.rows[1][1] == "multi\nline");
}

TEST_CASE("carriage returns dropped, trailing newline optional") {
    csv::Table a = csv::parse("x,y\r\n1,2\r\n");
    csv::Table b = csv::parse("x,y\n1,2");
    CHECK(a.rows == b.rows);
    CHECK(a.header == b.header);
}

TEST_CASE("unbalanced quotes are a data error") {
    CHECK_THROWS_AS(csv::parse("a,b\n\"open,2\n"), DataError);
}

TEST_CASE("write then parse round-trips") {
    csv::Table t;
    t.header = {"id", "text"};
    t.rows = {{"1", "a,b"}, {"2", "he said \"no\""}, {"3", ""}};
    std::ostringstream out;
    csv::write(out, t);
    csv::Table back = csv::parse(out.str());
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
}

TEST_CASE("empty fields survive") {
    csv::Table t = csv::parse("a,b,c\n,,\nx,,z\n");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"", "", ""});
    CHECK(t.rows[1] == std::vector<std::string>{"x", "", "z"});
}

}  // TEST_SUITE
