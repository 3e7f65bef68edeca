#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rentscope/listing.hpp"

namespace rentscope::extractor {

// Free-text field normalizers. All of them are total: any input yields a
// value or absent, never an error.

// First dollar amount in the text; currency symbol, thousands separators and
// trailing cents are stripped (cents truncate toward zero).
std::optional<long long> normalize_money(std::string_view text);

// Integer adjacent to an area marker: ft², ft2, sqft, sq ft, sq. ft.
// (case-insensitive), with optional thousands separators.
std::optional<long long> normalize_area(std::string_view text);

// "2br", "3 bedroom", "studio" (= 0). Values above 8 pass through; the
// cleaning stage decides their fate.
std::optional<int> normalize_bedrooms(std::string_view text);

// Both coordinates must parse as decimal degrees in range; (0, 0) is the
// null-island sentinel and reads as absent.
std::optional<GeoPoint> normalize_coords(std::string_view lat_text, std::string_view lon_text);

// Plain decimal number.
std::optional<double> normalize_decimal(std::string_view text);

// Longest run of digits in the text (listing IDs inside label text).
std::optional<std::string> normalize_digits(std::string_view text);

// Whitespace-trimmed copy.
std::string normalize_text(std::string_view text);

}  // namespace rentscope::extractor
