#include "airstat/calendar.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace airstat {

const char* const kMonthAbbrev[12] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
const char* const kWeekdayAbbrev[7] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[static_cast<std::size_t>(month - 1)];
}

bool valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12) return false;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
    return true;
}

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(const Date& d) {
    std::int64_t y = d.year;
    const std::int64_t m = d.month;
    const std::int64_t dd = d.day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dd - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int weekday_from_days(std::int64_t days) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    std::int64_t w = (days + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

Minutes minutes_at(const Date& d, int hour, int minute) {
    return days_from_civil(d) * 1440 + hour * 60 + minute;
}

std::int64_t day_index_of(Minutes t) {
    std::int64_t d = t / 1440;
    if (t < 0 && t % 1440 != 0) --d;
    return d;
}

Date date_of(Minutes t) {
    return civil_from_days(day_index_of(t));
}

int hour_of(Minutes t) {
    const std::int64_t m = t - day_index_of(t) * 1440;
    return static_cast<int>(m / 60);
}

int minute_of(Minutes t) {
    const std::int64_t m = t - day_index_of(t) * 1440;
    return static_cast<int>(m % 60);
}

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    if (!parse_int(text.substr(0, 4), d.year)) return std::nullopt;
    if (!parse_int(text.substr(5, 2), d.month)) return std::nullopt;
    if (!parse_int(text.substr(8, 2), d.day)) return std::nullopt;
    if (!valid_date(d)) return std::nullopt;
    return d;
}

std::optional<int> parse_hhmm(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon > 2) return std::nullopt;
    if (text.size() - colon - 1 != 2) return std::nullopt;
    int h = 0;
    int m = 0;
    if (!parse_int(text.substr(0, colon), h)) return std::nullopt;
    if (!parse_int(text.substr(colon + 1), m)) return std::nullopt;
    if (h < 0 || h > 23 || m < 0 || m > 59) return std::nullopt;
    return h * 60 + m;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::string format_hhmm(int minutes_past_midnight) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d", minutes_past_midnight / 60,
                  minutes_past_midnight % 60);
    return buf;
}

}  // namespace airstat
