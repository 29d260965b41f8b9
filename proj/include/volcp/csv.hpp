#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace volcp::csv {

// Splits one line on commas, trimming whitespace and surrounding quotes.
std::vector<std::string> split_line(std::string_view line);

// Reads the next non-blank line, stripping a trailing '\r'.
bool next_line(std::istream& is, std::string& line);

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

// Strict decimal parse of a whole cell; nullopt on an empty cell, throws
// InputError on anything that is not a number.
std::optional<double> parse_cell(std::string_view cell, std::string_view where);

}  // namespace volcp::csv
