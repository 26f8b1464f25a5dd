#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace parlmine::csv {

using Row = std::vector<std::string>;

// RFC 4180: fields containing ',', '"', CR or LF are quoted, quotes doubled.
std::string escape_field(std::string_view field);
std::string format_row(const Row& row);

// Parses a whole document; a trailing newline does not yield an empty row.
// Throws Error{MalformedCsv} on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

}  // namespace parlmine::csv
