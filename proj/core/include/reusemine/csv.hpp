#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace reusemine {

using CsvRow = std::vector<std::string>;

// RFC 4180: comma separated, fields quoted with `"` when they contain a
// comma, quote, CR or LF; embedded quotes doubled. Accepts LF or CRLF line
// ends. Throws ConfigError on an unterminated quoted field.
std::vector<CsvRow> parse_csv(std::string_view text, const std::string& source_name = "csv");

std::string csv_field(std::string_view value);
void write_csv_row(std::ostream& out, const CsvRow& row);

// Six significant digits, printf %g style; "-0" is normalized to "0" and
// non-finite values print as "nan", "inf" or "-inf".
std::string format_number(double value);

// Parses a number written by format_number (or any strtod-compatible text).
// Throws ConfigError naming `what` on failure.
double parse_number(std::string_view text, std::string_view what);

std::string read_text_file(const std::string& path);  // throws ConfigError

} // namespace reusemine
