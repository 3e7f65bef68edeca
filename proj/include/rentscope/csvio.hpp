#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rentscope::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column position by name, -1 when absent.
    int column(const std::string& name) const;
};

// RFC-style quoting: fields containing comma, quote, or newline are wrapped
// in double quotes with embedded quotes doubled.
std::string encode_field(const std::string& field);
std::string encode_row(const std::vector<std::string>& row);

Table parse(std::string_view text);  // throws DataError on unbalanced quotes
Table read_file(const std::string& path);

void write(std::ostream& out, const Table& table);
void write_file(const std::string& path, const Table& table);

}  // namespace rentscope::csv
