#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mobiflow {

/// Calendar date without a time zone, stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;

    /// Throws ValidationError if the triple is not a valid calendar date.
    static Date from_ymd(int year, unsigned month, unsigned day);

    /// Accepts "YYYY-MM-DD", "M/D/YY" and "M/D/YYYY" (two-digit years are
    /// 2000-based). Throws ParseError otherwise.
    static Date parse(std::string_view text);

    static constexpr Date from_serial(std::int32_t days) {
        Date d;
        d.days_ = days;
        return d;
    }

    std::string to_iso() const;

    constexpr std::int32_t serial() const noexcept { return days_; }

    int year() const;
    unsigned month() const;
    unsigned day() const;

    constexpr Date operator+(int days) const { return from_serial(days_ + days); }
    constexpr Date operator-(int days) const { return from_serial(days_ - days); }
    constexpr int operator-(Date other) const { return days_ - other.days_; }
    constexpr Date& operator+=(int days) {
        days_ += days;
        return *this;
    }

    constexpr auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

} // namespace mobiflow
