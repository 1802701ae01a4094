#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace entrorisk {

// Calendar date. Comparison is lexicographic on (year, month, day),
// which matches chronological order for valid dates.
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid_date(const Date& d);

// Parses strict ISO-8601 "YYYY-MM-DD". Throws IoError on anything else.
Date parse_date(std::string_view text);
std::string to_string(const Date& d);

// 0 = Sunday ... 6 = Saturday.
int day_of_week(const Date& d);
bool is_weekday(const Date& d);

Date next_day(Date d);
// Next Monday..Friday strictly after d.
Date next_weekday(Date d);

// Closed interval [lo, hi].
struct DateInterval {
  Date lo;
  Date hi;
  bool contains(const Date& d) const { return lo <= d && d <= hi; }
};

}  // namespace entrorisk
