#include "hrm/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace hrm {

namespace {

namespace chr = std::chrono;

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) {
        return false;
    }
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (text[i] < '0' || text[i] > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && ptr == text.data() + pos + len;
}

Date clamp_to_month(chr::year y, chr::month m, chr::day d) {
    const auto last = chr::year_month_day_last{y, chr::month_day_last{m}}.day();
    return Date{y, m, d > last ? last : d};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    int y = 0, m = 0, d = 0;
    if (!parse_fixed(text, 0, 4, y) || !parse_fixed(text, 5, 2, m) || !parse_fixed(text, 8, 2, d)) {
        return std::nullopt;
    }
    Date date{chr::year{y}, chr::month{static_cast<unsigned>(m)}, chr::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' ||
        text[19] != 'Z') {
        return std::nullopt;
    }
    auto date = parse_date(text.substr(0, 10));
    int hh = 0, mm = 0, ss = 0;
    if (!date || !parse_fixed(text, 11, 2, hh) || !parse_fixed(text, 14, 2, mm) ||
        !parse_fixed(text, 17, 2, ss) || hh > 23 || mm > 59 || ss > 59) {
        return std::nullopt;
    }
    return chr::sys_days{*date} + chr::hours{hh} + chr::minutes{mm} + chr::seconds{ss};
}

std::string format_timestamp(Timestamp ts) {
    const auto day = chr::floor<chr::days>(ts);
    const chr::hh_mm_ss hms{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(Date{day}).c_str(),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

Date date_of(Timestamp ts) { return Date{chr::floor<chr::days>(ts)}; }

Date add_years(const Date& d, int years) {
    return clamp_to_month(d.year() + chr::years{years}, d.month(), d.day());
}

Date subtract_months(const Date& d, int months) {
    const chr::year_month shifted = chr::year_month{d.year(), d.month()} - chr::months{months};
    return clamp_to_month(shifted.year(), shifted.month(), d.day());
}

long days_between(const Date& from, const Date& to) {
    return (chr::sys_days{to} - chr::sys_days{from}).count();
}

}  // namespace hrm
