#include "cognate/csv.hpp"

#include <fstream>

#include <fmt/format.h>

#include "cognate/error.hpp"

namespace cognate::csv {

bool Reader::next(Row& row) {
    row.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    bool field_was_quoted = false;
    record_line_ = physical_line_ + 1;

    int ch;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
        any = true;
        char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++physical_line_;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (c == '\r' && in_.peek() == '\n') {
            continue;
        } else if (c == '\n') {
            ++physical_line_;
            row.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) {
        throw DataError(fmt::format("unterminated quoted field starting on line {}", record_line_));
    }
    if (!any) return false;
    row.push_back(std::move(field));
    ++physical_line_;
    return true;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
    if (auto idx = column(name)) return *idx;
    throw DataError(fmt::format("missing column '{}'", name));
}

Table read_table(std::istream& in, std::string_view source_name) {
    Table table;
    Reader reader(in);
    Row row;
    if (!reader.next(table.header)) {
        throw DataError(fmt::format("{}: empty file, expected a header row", source_name));
    }
    if (!table.header.empty() && table.header[0].starts_with("\xEF\xBB\xBF")) {
        table.header[0].erase(0, 3);
    }
    while (reader.next(row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != table.header.size()) {
            throw DataError(fmt::format("{}:{}: expected {} fields, found {}", source_name,
                                        reader.line(), table.header.size(), row.size()));
        }
        table.rows.push_back(row);
        table.lines.push_back(reader.line());
    }
    return table;
}

Table read_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open '{}'", path));
    return read_table(in, path);
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << escape(row[i]);
    }
    out << '\n';
}

}  // namespace cognate::csv
