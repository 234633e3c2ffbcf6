#include "mobiflow/csv.hpp"

#include <charconv>
#include <system_error>

#include "mobiflow/errors.hpp"

namespace mobiflow::csv {

std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false; // current row has at least one character or delimiter
    std::size_t line = 1;

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            ++i;
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            field_started = true;
            ++i;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
            ++i;
            break;
        case '\r':
            ++i;
            break;
        case '\n':
            if (field_started || !field.empty() || !row.empty()) {
                row.push_back(std::move(field));
                field.clear();
                rows.push_back(std::move(row));
                row.clear();
                field_started = false;
            }
            ++line;
            ++i;
            break;
        default:
            field.push_back(c);
            field_started = true;
            ++i;
            break;
        }
    }
    if (in_quotes) {
        throw ParseError("unterminated quoted field", line);
    }
    if (field_started || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape_field(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string write(const std::vector<Row>& rows) {
    std::string out;
    for (const Row& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out.push_back(',');
            out += escape_field(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw ComputationError("double formatting failed");
    return std::string(buf, ptr);
}

} // namespace mobiflow::csv
