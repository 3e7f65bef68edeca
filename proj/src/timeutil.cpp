#include "rentscope/timeutil.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

namespace rentscope {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return d[m - 1];
}

}  // namespace

bool CivilDate::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

long long CivilDate::days_from_epoch() const {
    // Howard Hinnant's days-from-civil algorithm.
    long long y = year - (month <= 2);
    long long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

int CivilDate::weekday() const {
    // 1970-01-01 was a Thursday; map to 0 = Monday.
    long long d = days_from_epoch();
    return static_cast<int>(((d % 7) + 7 + 3) % 7);
}

CivilDate CivilDate::next_day() const {
    CivilDate n = *this;
    if (++n.day > days_in_month(n.year, n.month)) {
        n.day = 1;
        if (++n.month > 12) {
            n.month = 1;
            ++n.year;
        }
    }
    return n;
}

std::string Stamp::to_iso() const {
    char buf[40];
    if (has_time()) {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d%s", date.year, date.month,
                      date.day, sec_of_day / 3600, (sec_of_day / 60) % 60, sec_of_day % 60,
                      utc ? "Z" : "");
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", date.year, date.month, date.day);
    }
    return buf;
}

std::optional<Stamp> parse_stamp(std::string_view s) {
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    auto num = [&](size_t pos, size_t len, int& out) {
        if (pos + len > s.size()) return false;
        int v = 0;
        for (size_t i = pos; i < pos + len; ++i) {
            if (!digit(s[i])) return false;
            v = v * 10 + (s[i] - '0');
        }
        out = v;
        return true;
    };

    Stamp st;
    int y, mo, d;
    if (!num(0, 4, y) || s.size() < 10 || s[4] != '-' || !num(5, 2, mo) || s[7] != '-' ||
        !num(8, 2, d))
        return std::nullopt;
    st.date = {y, mo, d};
    if (!st.date.valid()) return std::nullopt;
    if (s.size() == 10) return st;

    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    int hh, mm, ss = 0;
    if (!num(11, 2, hh) || s.size() < 16 || s[13] != ':' || !num(14, 2, mm)) return std::nullopt;
    size_t pos = 16;
    if (pos < s.size() && s[pos] == ':') {
        if (!num(pos + 1, 2, ss)) return std::nullopt;
        pos += 3;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    st.sec_of_day = hh * 3600 + mm * 60 + ss;
    // Zone suffix: keep the local clock reading, remember UTC for formatting.
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            st.utc = true;
        } else if (s[pos] == '+' || s[pos] == '-') {
            // accept +HH:MM, +HHMM, +HH
            for (size_t i = pos + 1; i < s.size(); ++i)
                if (!digit(s[i]) && s[i] != ':') return std::nullopt;
        } else {
            return std::nullopt;
        }
    }
    return st;
}

Stamp now_utc() {
    using namespace std::chrono;
    auto now = floor<seconds>(system_clock::now());
    auto days = floor<std::chrono::days>(now);
    year_month_day ymd{sys_days(days)};
    Stamp st;
    st.date = {static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month())),
               static_cast<int>(unsigned(ymd.day()))};
    st.sec_of_day = static_cast<int>((now - days).count());
    st.utc = true;
    return st;
}

}  // namespace rentscope
