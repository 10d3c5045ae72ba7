#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bioperf::csv {

using Row = std::vector<std::string>;

/// RFC 4180 style reader: comma separated, double-quote escaping, CRLF or LF.
/// Blank lines are skipped. Throws ValidationError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

/// Reads a whole file and parses it. Throws ValidationError if unreadable.
std::vector<Row> read_file(const std::string& path);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const Row& row);

/// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

/// Strict number parse of a whole cell; `row`/`column` feed the diagnostic.
double parse_number(std::string_view cell, std::size_t row, std::string_view column);

}  // namespace bioperf::csv
