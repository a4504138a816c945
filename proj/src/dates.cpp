#include "sbsize/dates.hpp"

#include <cstdio>

#include "sbsize/errors.hpp"

namespace sbsize {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

bool is_valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

int day_of_year(const Date& d) {
    int n = d.day;
    for (int m = 1; m < d.month; ++m) n += days_in_month(d.year, m);
    return n;
}

// Howard Hinnant's civil-days algorithm.
long long to_serial(const Date& d) {
    long long y = d.year;
    const int m = d.month;
    const int dd = d.day;
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dd - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

Date from_serial(long long serial) {
    long long z = serial + 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date next_day(const Date& d) {
    return from_serial(to_serial(d) + 1);
}

std::string to_string(const Date& d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date parse_date(const std::string& s) {
    int y = 0, m = 0, dd = 0;
    char trail = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &dd, &trail) != 3) {
        throw DataError("malformed date '" + s + "' (expected YYYY-MM-DD)");
    }
    Date d{y, m, dd};
    if (!is_valid_date(d)) throw DataError("invalid date '" + s + "'");
    return d;
}

MinuteStamp parse_minute_stamp(const std::string& s) {
    int y = 0, m = 0, dd = 0, hh = 0, mm = 0;
    char trail = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d%c", &y, &m, &dd, &hh, &mm, &trail) != 5) {
        throw DataError("malformed timestamp '" + s + "' (expected YYYY-MM-DDTHH:MM)");
    }
    Date d{y, m, dd};
    if (!is_valid_date(d) || hh < 0 || hh > 23 || mm < 0 || mm > 59) {
        throw DataError("invalid timestamp '" + s + "'");
    }
    return MinuteStamp{d, hh * 60 + mm};
}

std::string format_minute_stamp(const Date& d, int minute_of_day) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", d.year, d.month, d.day,
                  minute_of_day / 60, minute_of_day % 60);
    return buf;
}

}  // namespace sbsize
