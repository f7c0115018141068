#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace hrm {

using Date = std::chrono::year_month_day;
using Timestamp = std::chrono::sys_seconds;

/// Parses a strict ISO 8601 calendar date (YYYY-MM-DD). Rejects impossible
/// dates such as 2015-02-29.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

/// Parses YYYY-MM-DDTHH:MM:SSZ.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

Date date_of(Timestamp ts);

/// Same month and day `years` later (or earlier when negative). A Feb 29
/// source clamps to Feb 28 when the target year is not a leap year.
Date add_years(const Date& d, int years);

/// Same day-of-month `months` earlier, clamped to the last day of the target
/// month.
Date subtract_months(const Date& d, int months);

/// Whole days from `from` to `to` (negative when `to` precedes `from`).
long days_between(const Date& from, const Date& to);

}  // namespace hrm
