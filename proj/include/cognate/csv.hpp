#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cognate::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain commas, quotes ("") and newlines.
// Line endings may be LF or CRLF.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Returns false at end of input. line() is the physical line the record started on.
    bool next(Row& row);
    std::size_t line() const { return record_line_; }

private:
    std::istream& in_;
    std::size_t physical_line_ = 0;
    std::size_t record_line_ = 0;
};

// A file with a mandatory header row, addressed by column name.
struct Table {
    Row header;
    std::vector<Row> rows;
    std::vector<std::size_t> lines;  // source line of each row

    std::optional<std::size_t> column(std::string_view name) const;
    // Throws DataError naming the missing column.
    std::size_t require_column(std::string_view name) const;
};

Table read_table(std::istream& in, std::string_view source_name);
Table read_table_file(const std::string& path);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

}  // namespace cognate::csv
