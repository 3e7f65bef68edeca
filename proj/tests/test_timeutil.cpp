#include <doctest.h>

#include "rentscope/timeutil.hpp"

using namespace rentscope;

TEST_SUITE("timeutil") {

TEST_CASE("parse date only") {
    auto st = parse_stamp("2014-06-02");
    REQUIRE(st.has_value());
    CHECK(st->date == CivilDate{2014, 6, 2});
    CHECK_FALSE(st->has_time());
    CHECK(st->to_iso() == "2014-06-02");
}

TEST_CASE("parse date and time variants") {
    auto a = parse_stamp("2014-06-02T09:15:00");
    REQUIRE(a.has_value());
    CHECK(a->sec_of_day == 9 * 3600 + 15 * 60);
    CHECK_FALSE(a->utc);
    CHECK(a->to_iso() == "2014-06-02T09:15:00");

    auto b = parse_stamp("2014-06-02 09:15");
    REQUIRE(b.has_value());
    CHECK(b->sec_of_day == a->sec_of_day);
    CHECK(b->to_iso() == "2014-06-02T09:15:00");

    auto c = parse_stamp("2014-06-03T14:02:30Z");
    REQUIRE(c.has_value());
    CHECK(c->utc);
    CHECK(c->sec_of_day == 14 * 3600 + 2 * 60 + 30);
    CHECK(c->to_iso() == "2014-06-03T14:02:30Z");
}

TEST_CASE("zone offsets are dropped, not applied") {
    for (const char* text : {"2014-06-10T07:40:00-07:00", "2014-06-10T07:40:00+0530",
                             "2014-06-10T07:40:00+07"}) {
        auto st = parse_stamp(text);
        REQUIRE(st.has_value());
        CHECK(st->date == CivilDate{2014, 6, 10});
        CHECK(st->sec_of_day == 7 * 3600 + 40 * 60);
        CHECK_FALSE(st->utc);
        CHECK(st->to_iso() == "2014-06-10T07:40:00");
    }
}

TEST_CASE("reject malformed stamps") {
    CHECK_FALSE(parse_stamp("").has_value());
    CHECK_FALSE(parse_stamp("last tuesday").has_value());
    CHECK_FALSE(parse_stamp("2014-6-02").has_value());
    CHECK_FALSE(parse_stamp("2014-13-01").has_value());
    CHECK_FALSE(parse_stamp("2014-06-31").has_value());
    CHECK_FALSE(parse_stamp("2014-02-30").has_value());
    CHECK_FALSE(parse_stamp("2014-06-02T25:00:00").has_value());
    CHECK_FALSE(parse_stamp("2014-06-02T09:75:00").has_value());
    CHECK_FALSE(parse_stamp("2014-06-02X09:15:00").has_value());
    CHECK_FALSE(parse_stamp("2014-06-02T09:15:00EST").has_value());
}

TEST_CASE("leap year handling") {
    CHECK(CivilDate{2012, 2, 29}.valid());
    CHECK(CivilDate{2000, 2, 29}.valid());
    CHECK_FALSE(CivilDate{1900, 2, 29}.valid());
    CHECK_FALSE(CivilDate{2014, 2, 29}.valid());
    CHECK(CivilDate{2012, 2, 28}.next_day() == CivilDate{2012, 2, 29});
    CHECK(CivilDate{2014, 2, 28}.next_day() == CivilDate{2014, 3, 1});
}

TEST_CASE("epoch day arithmetic") {
    CHECK(CivilDate{1970, 1, 1}.days_from_epoch() == 0);
    CHECK(CivilDate{1970, 1, 2}.days_from_epoch() == 1);
    CHECK(CivilDate{1969, 12, 31}.days_from_epoch() == -1);
    CHECK(CivilDate{2014, 6, 2}.days_from_epoch() == 16223);
}

TEST_CASE("weekday, monday is zero") {
    CHECK(CivilDate{2014, 6, 2}.weekday() == 0);   // Monday
    CHECK(CivilDate{2014, 6, 8}.weekday() == 6);   // Sunday
    CHECK(CivilDate{1970, 1, 1}.weekday() == 3);   // Thursday
    CHECK(CivilDate{2000, 12, 31}.weekday() == 6); // Sunday
}

TEST_CASE("next_day over month and year ends") {
    CHECK(CivilDate{2014, 1, 31}.next_day() == CivilDate{2014, 2, 1});
    CHECK(CivilDate{2014, 12, 31}.next_day() == CivilDate{2015, 1, 1});
    CHECK(CivilDate{2014, 6, 30}.next_day() == CivilDate{2014, 7, 1});
}

TEST_CASE("stamp ordering and equality") {
    Stamp dateonly = *parse_stamp("2014-06-02");
    Stamp midnight = *parse_stamp("2014-06-02T00:00:00");
    Stamp morning = *parse_stamp("2014-06-02T09:15:00");
    CHECK(dateonly < midnight);  // date precision sorts before any clock reading
    CHECK(midnight < morning);
    CHECK(morning < *parse_stamp("2014-06-03"));

    Stamp z = *parse_stamp("2014-06-02T09:15:00Z");
    CHECK(z == morning);  // the utc flag is a formatting hint, not identity
}

}  // TEST_SUITE
