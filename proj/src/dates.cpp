#include "entrorisk/dates.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "entrorisk/errors.hpp"

namespace entrorisk {

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> base = {31, 28, 31, 30, 31, 30,
                                               31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && is_leap_year(year)) return 29;
  return base[static_cast<std::size_t>(month - 1)];
}

bool is_valid_date(const Date& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

namespace {

int parse_int_field(std::string_view text, std::size_t pos, std::size_t len,
                    std::string_view original) {
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw IoError("bad date '" + std::string(original) +
                    "': expected YYYY-MM-DD");
  }
  int value = 0;
  std::from_chars(text.data() + pos, text.data() + pos + len, value);
  return value;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw IoError("bad date '" + std::string(text) + "': expected YYYY-MM-DD");
  Date d;
  d.year = parse_int_field(text, 0, 4, text);
  d.month = parse_int_field(text, 5, 2, text);
  d.day = parse_int_field(text, 8, 2, text);
  if (!is_valid_date(d))
    throw IoError("bad date '" + std::string(text) + "': not a calendar date");
  return d;
}

std::string to_string(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

int day_of_week(const Date& d) {
  // Sakamoto's method.
  static constexpr std::array<int, 12> t = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  int y = d.year;
  if (d.month < 3) y -= 1;
  return (y + y / 4 - y / 100 + y / 400 + t[static_cast<std::size_t>(d.month - 1)] +
          d.day) %
         7;
}

bool is_weekday(const Date& d) {
  const int w = day_of_week(d);
  return w != 0 && w != 6;
}

Date next_day(Date d) {
  d.day += 1;
  if (d.day > days_in_month(d.year, d.month)) {
    d.day = 1;
    d.month += 1;
    if (d.month > 12) {
      d.month = 1;
      d.year += 1;
    }
  }
  return d;
}

Date next_weekday(Date d) {
  do {
    d = next_day(d);
  } while (!is_weekday(d));
  return d;
}

}  // namespace entrorisk
