#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parlmine {

// Calendar date with day granularity. All duration arithmetic in the
// toolkit is in whole days.
using Date = std::chrono::year_month_day;

std::vector<std::string> default_date_formats();

// Parses `text` against a pattern built from the tokens yyyy, MM, M, dd, d
// and literal characters (e.g. "dd.MM.yyyy"). Surrounding whitespace in
// `text` is ignored; the remainder must match the pattern completely and
// denote a valid calendar date.
std::optional<Date> parse_date(std::string_view text, std::string_view pattern);

// First pattern that parses wins.
std::optional<Date> parse_date_any(std::string_view text, std::span<const std::string> patterns);

// yyyy-MM-dd
std::string format_iso_date(Date date);

// Midnight UTC of the calendar date in xs:dateTime form.
std::string format_xes_timestamp(Date date);

// Accepts an xs:dateTime or xs:date value and returns the calendar date as
// written; time of day and zone offset are not applied.
std::optional<Date> parse_xes_timestamp(std::string_view text);

inline long days_between(Date from, Date to) {
  return static_cast<long>((std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

inline int year_of(Date date) { return static_cast<int>(date.year()); }
inline unsigned month_of(Date date) { return static_cast<unsigned>(date.month()); }

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

}  // namespace parlmine
