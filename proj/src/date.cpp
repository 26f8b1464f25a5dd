#include "parlmine/date.hpp"

#include <cctype>

#include <fmt/format.h>

namespace parlmine {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Reads between min_digits and max_digits ASCII digits starting at pos.
bool read_number(std::string_view text, std::size_t& pos, std::size_t min_digits, std::size_t max_digits,
                 int& out) {
  std::size_t n = 0;
  int value = 0;
  while (pos + n < text.size() && n < max_digits && std::isdigit(static_cast<unsigned char>(text[pos + n]))) {
    value = value * 10 + (text[pos + n] - '0');
    ++n;
  }
  if (n < min_digits) return false;
  pos += n;
  out = value;
  return true;
}

bool starts_with(std::string_view s, std::size_t pos, std::string_view token) {
  return s.substr(pos, token.size()) == token;
}

}  // namespace

std::vector<std::string> default_date_formats() { return {"dd.MM.yyyy", "yyyy-MM-dd"}; }

std::optional<Date> parse_date(std::string_view text, std::string_view pattern) {
  text = trim(text);
  int year = -1;
  int month = -1;
  int day = -1;
  std::size_t tp = 0;
  std::size_t pp = 0;
  while (pp < pattern.size()) {
    if (starts_with(pattern, pp, "yyyy")) {
      if (!read_number(text, tp, 4, 4, year)) return std::nullopt;
      pp += 4;
    } else if (starts_with(pattern, pp, "MM")) {
      if (!read_number(text, tp, 2, 2, month)) return std::nullopt;
      pp += 2;
    } else if (pattern[pp] == 'M') {
      if (!read_number(text, tp, 1, 2, month)) return std::nullopt;
      pp += 1;
    } else if (starts_with(pattern, pp, "dd")) {
      if (!read_number(text, tp, 2, 2, day)) return std::nullopt;
      pp += 2;
    } else if (pattern[pp] == 'd') {
      if (!read_number(text, tp, 1, 2, day)) return std::nullopt;
      pp += 1;
    } else {
      if (tp >= text.size() || text[tp] != pattern[pp]) return std::nullopt;
      ++tp;
      ++pp;
    }
  }
  if (tp != text.size() || year < 0 || month < 0 || day < 0) return std::nullopt;
  Date date = make_date(year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<Date> parse_date_any(std::string_view text, std::span<const std::string> patterns) {
  for (const auto& pattern : patterns) {
    if (auto date = parse_date(text, pattern)) return date;
  }
  return std::nullopt;
}

std::string format_iso_date(Date date) {
  return fmt::format("{:04d}-{:02d}-{:02d}", year_of(date), month_of(date), static_cast<unsigned>(date.day()));
}

std::string format_xes_timestamp(Date date) { return format_iso_date(date) + "T00:00:00.000+00:00"; }

std::optional<Date> parse_xes_timestamp(std::string_view text) {
  text = trim(text);
  // xs:date / xs:dateTime both start with a (possibly signed) year, '-', month, '-', day.
  auto date = parse_date(text.substr(0, 10), "yyyy-MM-dd");
  if (!date) return std::nullopt;
  std::string_view rest = text.substr(10);
  if (!rest.empty() && rest.front() != 'T' && rest.front() != 'Z' && rest.front() != '+' && rest.front() != '-') {
    return std::nullopt;
  }
  return date;
}

}  // namespace parlmine
