#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <utility>

#include "parlmine/eventlog.hpp"

namespace parlmine::cleaning {

struct CleaningPolicy {
  int min_year = 1984;
  int max_year = 2024;
  long max_cycle_days = 1826;  // five calendar years including one leap day
  std::string fallback_attribute = keys::kDokArtL;
  std::set<std::string> fallback_excluded_values = {"Drucksache"};
};

// Trace counts per filtering rule. A trace failing several rules is counted
// under each of them but removed once, so removed_total can be smaller than
// the sum of the rule counts.
struct FilterReport {
  std::size_t original = 0;
  std::size_t missing_date = 0;
  std::size_t invalid_date = 0;  // out-of-range timestamp or cycle-time cap violation
  std::size_t no_activity_before_correction = 0;
  std::size_t no_activity_after_correction = 0;
  std::size_t removed_total = 0;
  std::size_t remaining = 0;

  bool operator==(const FilterReport&) const = default;
};

struct CleanResult {
  EventLog log;
  FilterReport report;
};

CleanResult clean(const EventLog& log, const CleaningPolicy& policy = {});

// Days between the first and last timestamped event. Events without a
// timestamp are ignored. Throws Error{NoTimestampedEvents}.
long cycle_time_days(const Trace& trace);

// Field name / human-readable row label / value, in report order.
struct ReportRow {
  const char* field;
  const char* label;
  std::size_t value;
};
std::array<ReportRow, 7> report_rows(const FilterReport& report);

std::string report_to_csv(const FilterReport& report);
std::string report_to_json(const FilterReport& report);

}  // namespace parlmine::cleaning
