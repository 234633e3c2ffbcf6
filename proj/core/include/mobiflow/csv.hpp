#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mobiflow::csv {

using Row = std::vector<std::string>;

/// RFC-4180-style parser: comma delimited, double quotes with "" escapes,
/// accepts LF and CRLF line endings. Throws ParseError on an unterminated
/// quoted field. A trailing newline does not produce an empty row.
std::vector<Row> parse(std::string_view text);

/// Writes rows with LF endings, quoting a field only when it contains a
/// comma, quote or newline.
std::string write(const std::vector<Row>& rows);

std::string escape_field(std::string_view field);

/// Shortest decimal string that round-trips the exact double.
std::string format_double(double value);

} // namespace mobiflow::csv
