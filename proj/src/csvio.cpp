#include "rentscope/csvio.hpp"

#include <fstream>
#include <sstream>

#include "rentscope/errors.hpp"

namespace rentscope::csv {

int Table::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::string encode_field(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string encode_row(const std::vector<std::string>& row) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += encode_field(row[i]);
    }
    return out;
}

Table parse(std::string_view text) {
    Table t;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (t.header.empty()) t.header = std::move(row);
        else t.rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
            row_has_content = true;
            ++i;
        } else if (c == ',') {
            end_field();
            row_has_content = true;
            ++i;
        } else if (c == '\r') {
            ++i;
        } else if (c == '\n') {
            if (row_has_content || !field.empty() || !row.empty()) end_row();
            ++i;
        } else {
            field += c;
            row_has_content = true;
            ++i;
        }
    }
    if (in_quotes) throw DataError("csv: unbalanced quotes");
    if (row_has_content || !field.empty() || !row.empty()) end_row();
    return t;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write(std::ostream& out, const Table& table) {
    out << encode_row(table.header) << '\n';
    for (const auto& row : table.rows) out << encode_row(row) << '\n';
}

void write_file(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    write(out, table);
    out.flush();
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace rentscope::csv
