#include "mobiflow/date.hpp"

#include <charconv>
#include <chrono>

#include "mobiflow/errors.hpp"

namespace mobiflow {

namespace {

std::chrono::year_month_day to_ymd_impl(std::int32_t serial) {
    const std::chrono::sys_days sd{std::chrono::days{serial}};
    return std::chrono::year_month_day{sd};
}

bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
        throw ValidationError("invalid calendar date " + std::to_string(year) + "-" +
                              std::to_string(month) + "-" + std::to_string(day));
    }
    const std::chrono::sys_days sd{ymd};
    return from_serial(static_cast<std::int32_t>(sd.time_since_epoch().count()));
}

Date Date::parse(std::string_view text) {
    // ISO form first: YYYY-MM-DD.
    if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
        int y = 0, m = 0, d = 0;
        if (parse_int(text.substr(0, 4), y) && parse_int(text.substr(5, 2), m) &&
            parse_int(text.substr(8, 2), d)) {
            try {
                return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
            } catch (const ValidationError& e) {
                throw ParseError("unparseable date '" + std::string(text) + "': " + e.what());
            }
        }
        throw ParseError("unparseable date '" + std::string(text) + "'");
    }

    // Slash form: M/D/YY or M/D/YYYY.
    const auto slash1 = text.find('/');
    const auto slash2 = slash1 == std::string_view::npos ? std::string_view::npos
                                                         : text.find('/', slash1 + 1);
    if (slash1 != std::string_view::npos && slash2 != std::string_view::npos) {
        int m = 0, d = 0, y = 0;
        const bool ok = parse_int(text.substr(0, slash1), m) &&
                        parse_int(text.substr(slash1 + 1, slash2 - slash1 - 1), d) &&
                        parse_int(text.substr(slash2 + 1), y);
        const auto year_digits = text.size() - slash2 - 1;
        if (ok && (year_digits == 2 || year_digits == 4)) {
            if (year_digits == 2) y += 2000;
            try {
                return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
            } catch (const ValidationError& e) {
                throw ParseError("unparseable date '" + std::string(text) + "': " + e.what());
            }
        }
    }
    throw ParseError("unparseable date '" + std::string(text) + "'");
}

std::string Date::to_iso() const {
    const auto ymd = to_ymd_impl(days_);
    char buf[16];
    const int y = static_cast<int>(ymd.year());
    const unsigned m = static_cast<unsigned>(ymd.month());
    const unsigned d = static_cast<unsigned>(ymd.day());
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return std::string(buf);
}

int Date::year() const { return static_cast<int>(to_ymd_impl(days_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(to_ymd_impl(days_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(to_ymd_impl(days_).day()); }

} // namespace mobiflow
