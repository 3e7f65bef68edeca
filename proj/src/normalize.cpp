#include "rentscope/normalize.hpp"

#include <cctype>
#include <charconv>

namespace rentscope::extractor {

namespace {

bool digit(char c) { return c >= '0' && c <= '9'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Reads an integer with optional comma thousands separators starting at `i`;
// advances `i` past what it consumed. A comma joins the number only when
// followed by exactly three digits, so "1,200" reads as 1200 but "3,14159"
// stops at 3.
std::optional<long long> read_grouped_int(std::string_view s, size_t& i) {
    if (i >= s.size() || !digit(s[i])) return std::nullopt;
    long long v = 0;
    while (i < s.size() && digit(s[i])) {
        if (v <= 100'000'000'000'000LL) v = v * 10 + (s[i] - '0');
        ++i;
    }
    while (i < s.size() && s[i] == ',') {
        bool three = i + 4 <= s.size() && digit(s[i + 1]) && digit(s[i + 2]) &&
                     digit(s[i + 3]) && (i + 4 >= s.size() || !digit(s[i + 4]));
        if (!three) break;
        v = v * 1000 + (s[i + 1] - '0') * 100 + (s[i + 2] - '0') * 10 + (s[i + 3] - '0');
        i += 4;
    }
    return v;
}

}  // namespace

std::optional<long long> normalize_money(std::string_view s) {
    for (size_t i = 0; i < s.size(); ++i) {
        bool after_dollar = s[i] == '$';
        size_t j = after_dollar ? i + 1 : i;
        while (after_dollar && j < s.size() && s[j] == ' ') ++j;
        if (j >= s.size() || !digit(s[j])) {
            if (!after_dollar && digit(s[i])) j = i;
            else continue;
        }
        // A bare number embedded in a word ("route66") is not an amount.
        if (!after_dollar && j > 0 &&
            (std::isalpha(static_cast<unsigned char>(s[j - 1])) || s[j - 1] == '.'))
        {
            while (j < s.size() && digit(s[j])) ++j;
            i = j - 1;
            continue;
        }
        size_t k = j;
        auto v = read_grouped_int(s, k);
        if (!v) continue;
        // Truncate trailing cents toward zero.
        if (k < s.size() && s[k] == '.') {
            size_t c = k + 1;
            while (c < s.size() && digit(s[c])) ++c;
            k = c;
        }
        if (*v <= 0) {
            i = k - 1;
            continue;
        }
        return v;
    }
    return std::nullopt;
}

namespace {

// Matches an area marker at position i; returns its length or 0.
size_t area_marker_len(std::string_view s, size_t i) {
    auto at = [&](size_t pos, std::string_view word) {
        if (pos + word.size() > s.size()) return false;
        for (size_t k = 0; k < word.size(); ++k)
            if (lower(s[pos + k]) != word[k]) return false;
        return true;
    };
    if (at(i, "ft\xc2\xb2")) return 4;          // ft²  (UTF-8 superscript two)
    if (at(i, "ft2")) return 3;
    if (at(i, "sqft")) return 4;
    if (at(i, "sq")) {
        size_t j = i + 2;
        if (j < s.size() && s[j] == '.') ++j;
        while (j < s.size() && s[j] == ' ') ++j;
        if (at(j, "ft")) {
            size_t len = j + 2 - i;
            return len;
        }
    }
    return 0;
}

}  // namespace

std::optional<long long> normalize_area(std::string_view s) {
    for (size_t i = 0; i < s.size(); ++i) {
        if (!digit(s[i])) continue;
        if (i > 0 && (std::isalpha(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '.' ||
                      digit(s[i - 1])))
            continue;
        size_t k = i;
        auto v = read_grouped_int(s, k);
        if (!v) continue;
        size_t j = k;
        while (j < s.size() && (s[j] == ' ' || s[j] == '\t')) ++j;
        if (area_marker_len(s, j) > 0 && *v > 0) return v;
        i = k - 1;
    }
    return std::nullopt;
}

std::optional<int> normalize_bedrooms(std::string_view s) {
    // "studio" means zero bedrooms.
    std::string low;
    low.reserve(s.size());
    for (char c : s) low.push_back(lower(c));
    if (low.find("studio") != std::string::npos) return 0;

    for (size_t i = 0; i < s.size(); ++i) {
        if (!digit(s[i])) continue;
        if (i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '.'))
            continue;
        size_t k = i;
        long long v = 0;
        while (k < s.size() && digit(s[k])) {
            v = v * 10 + (s[k] - '0');
            if (v > 1000) break;
            ++k;
        }
        size_t j = k;
        while (j < s.size() && s[j] == ' ') ++j;
        auto word_at = [&](std::string_view w) {
            if (j + w.size() > low.size()) return false;
            return std::string_view(low).substr(j, w.size()) == w;
        };
        if (word_at("br") || word_at("bed") || word_at("bd")) {
            if (v >= 0 && v <= 1000) return static_cast<int>(v);
        }
        i = k - 1;
    }
    return std::nullopt;
}

std::optional<double> normalize_decimal(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = s.size();
    while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
    if (i >= j) return std::nullopt;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data() + i, s.data() + j, v);
    if (ec != std::errc{} || p != s.data() + j) return std::nullopt;
    return v;
}

std::optional<GeoPoint> normalize_coords(std::string_view lat_text, std::string_view lon_text) {
    auto lat = normalize_decimal(lat_text);
    auto lon = normalize_decimal(lon_text);
    if (!lat || !lon) return std::nullopt;
    GeoPoint p{*lat, *lon};
    if (!p.valid()) return std::nullopt;
    if (p.lat == 0.0 && p.lon == 0.0) return std::nullopt;  // null-island sentinel
    return p;
}

std::optional<std::string> normalize_digits(std::string_view s) {
    size_t best_start = 0, best_len = 0;
    size_t i = 0;
    while (i < s.size()) {
        if (!digit(s[i])) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < s.size() && digit(s[i])) ++i;
        if (i - start > best_len) {
            best_start = start;
            best_len = i - start;
        }
    }
    if (best_len == 0) return std::nullopt;
    return std::string(s.substr(best_start, best_len));
}

std::string normalize_text(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = s.size();
    while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
    return std::string(s.substr(i, j - i));
}

}  // namespace rentscope::extractor
