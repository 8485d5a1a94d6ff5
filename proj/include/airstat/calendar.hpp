#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace airstat {

struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool valid_date(const Date& d);

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t days);

// 0 = Monday .. 6 = Sunday.
int weekday_from_days(std::int64_t days);

// Timestamps are minutes since 1970-01-01 00:00 (no timezone; the data is
// registered in one control zone's local clock).
using Minutes = std::int64_t;

Minutes minutes_at(const Date& d, int hour, int minute);
Date date_of(Minutes t);
std::int64_t day_index_of(Minutes t);
int hour_of(Minutes t);
int minute_of(Minutes t);

// Strict "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);
// "HH:MM" or "H:MM"; returns minutes past midnight.
std::optional<int> parse_hhmm(std::string_view text);

std::string format_date(const Date& d);
std::string format_hhmm(int minutes_past_midnight);

extern const char* const kMonthAbbrev[12];   // "Jan".."Dec"
extern const char* const kWeekdayAbbrev[7];  // "Mon".."Sun"

}  // namespace airstat
