#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rentscope/listing.hpp"

namespace rentscope::records {

// One listing per line, a flat JSON object holding exactly the populated
// RawListing fields. Absent optionals are omitted, dates are ISO-8601, and
// keys serialize in a fixed order so identical inputs give identical bytes.

std::string to_line(const RawListing& l);
RawListing from_line(const std::string& line);  // throws DataError on bad input

void write_records(std::ostream& out, const std::vector<RawListing>& listings);
std::vector<RawListing> read_records(std::istream& in);

void write_records_file(const std::string& path, const std::vector<RawListing>& listings);
std::vector<RawListing> read_records_file(const std::string& path);

}  // namespace rentscope::records
