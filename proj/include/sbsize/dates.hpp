#pragma once

#include <compare>
#include <string>

namespace sbsize {

/// Calendar date in site-local standard time (no DST anywhere in this project).
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const Date& d);

/// 1-based ordinal day within the year (1..365/366).
int day_of_year(const Date& d);

/// Days since 1970-01-01 (negative before). Proleptic Gregorian.
long long to_serial(const Date& d);
Date from_serial(long long serial);

Date next_day(const Date& d);

std::string to_string(const Date& d);  // "YYYY-MM-DD"

/// Parses "YYYY-MM-DD". Throws DataError on malformed or invalid dates.
Date parse_date(const std::string& s);

/// Parses "YYYY-MM-DDTHH:MM" into a date plus minute-of-day (0..1439).
/// Throws DataError on malformed input.
struct MinuteStamp {
    Date date;
    int minute_of_day = 0;
};
MinuteStamp parse_minute_stamp(const std::string& s);

std::string format_minute_stamp(const Date& d, int minute_of_day);

}  // namespace sbsize
