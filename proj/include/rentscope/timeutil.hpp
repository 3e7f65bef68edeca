#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace rentscope {

struct CivilDate {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    bool valid() const;
    // Days since 1970-01-01 (may be negative).
    long long days_from_epoch() const;
    // 0 = Monday .. 6 = Sunday.
    int weekday() const;
    CivilDate next_day() const;

    auto operator<=>(const CivilDate&) const = default;
};

// A point in time with date precision guaranteed and time-of-day optional.
// Listings carry the page's stated local clock reading; no zone conversion
// is applied (the date component is authoritative for weekday grouping).
struct Stamp {
    CivilDate date;
    int sec_of_day = -1;  // -1 when the source carried a date only
    bool utc = false;     // formatting hint: trailing 'Z'

    bool has_time() const { return sec_of_day >= 0; }
    std::string to_iso() const;

    friend bool operator==(const Stamp& a, const Stamp& b) {
        return a.date == b.date && a.sec_of_day == b.sec_of_day;
    }
    friend std::strong_ordering operator<=>(const Stamp& a, const Stamp& b) {
        if (auto c = a.date <=> b.date; c != 0) return c;
        return a.sec_of_day <=> b.sec_of_day;
    }
};

// Accepts YYYY-MM-DD optionally followed by [T ]HH:MM[:SS] and an optional
// zone suffix (Z or +HH:MM / -HHMM). Zone offsets are dropped, not applied.
std::optional<Stamp> parse_stamp(std::string_view text);

// Current wall-clock time in UTC.
Stamp now_utc();

}  // namespace rentscope
