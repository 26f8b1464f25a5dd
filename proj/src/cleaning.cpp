#include "parlmine/cleaning.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include <nlohmann/json.hpp>

#include "parlmine/error.hpp"

namespace parlmine::cleaning {

namespace {

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

bool has_blank_activity(const Trace& trace) {
  return std::any_of(trace.events.begin(), trace.events.end(), [](const Event& e) { return is_blank(e.activity); });
}

bool has_missing_timestamp(const Trace& trace) {
  return std::any_of(trace.events.begin(), trace.events.end(), [](const Event& e) { return !e.timestamp; });
}

bool has_invalid_date(const Trace& trace, const CleaningPolicy& policy) {
  bool any_timestamp = false;
  for (const auto& e : trace.events) {
    if (!e.timestamp) continue;
    any_timestamp = true;
    const int y = year_of(*e.timestamp);
    if (y < policy.min_year || y > policy.max_year) return true;
  }
  return any_timestamp && cycle_time_days(trace) > policy.max_cycle_days;
}

void correct_activities(Trace& trace, const CleaningPolicy& policy) {
  for (auto& e : trace.events) {
    if (!is_blank(e.activity)) continue;
    auto it = e.attributes.find(policy.fallback_attribute);
    if (it == e.attributes.end()) continue;
    const auto* value = std::get_if<std::string>(&it->second);
    if (!value || is_blank(*value) || policy.fallback_excluded_values.contains(*value)) continue;
    e.activity = *value;
  }
}

}  // namespace

long cycle_time_days(const Trace& trace) {
  auto lo = std::chrono::sys_days::max();
  auto hi = std::chrono::sys_days::min();
  bool any = false;
  for (const auto& e : trace.events) {
    if (!e.timestamp) continue;
    const std::chrono::sys_days d{*e.timestamp};
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    any = true;
  }
  if (!any) throw Error(Errc::NoTimestampedEvents, "trace '" + trace.case_id + "' has no timestamped events");
  return static_cast<long>((hi - lo).count());
}

CleanResult clean(const EventLog& log, const CleaningPolicy& policy) {
  CleanResult result;
  result.log.name = log.name;
  result.log.provenance = log.provenance;
  result.log.provenance["cleaning"] = "years " + std::to_string(policy.min_year) + "-" +
                                      std::to_string(policy.max_year) + ", max cycle " +
                                      std::to_string(policy.max_cycle_days) + " days, fallback " +
                                      policy.fallback_attribute;
  auto& r = result.report;
  r.original = log.traces.size();
  for (const auto& trace : log.traces) {
    const bool missing = has_missing_timestamp(trace);
    const bool invalid = has_invalid_date(trace, policy);
    const bool blank_before = has_blank_activity(trace);
    Trace corrected = trace;
    if (blank_before) correct_activities(corrected, policy);
    const bool blank_after = blank_before && has_blank_activity(corrected);

    r.missing_date += missing;
    r.invalid_date += invalid;
    r.no_activity_before_correction += blank_before;
    r.no_activity_after_correction += blank_after;
    if (missing || invalid || blank_after) {
      ++r.removed_total;
    } else {
      result.log.traces.push_back(std::move(corrected));
    }
  }
  r.remaining = r.original - r.removed_total;
  return result;
}

std::array<ReportRow, 7> report_rows(const FilterReport& r) {
  return {{
      {"original", "originally", r.original},
      {"missing_date", "missing date", r.missing_date},
      {"invalid_date", "invalid date", r.invalid_date},
      {"no_activity_before_correction", "no activity name", r.no_activity_before_correction},
      {"no_activity_after_correction", "no activity name after correction", r.no_activity_after_correction},
      {"removed_total", "removed in total", r.removed_total},
      {"remaining", "after processing", r.remaining},
  }};
}

std::string report_to_csv(const FilterReport& report) {
  std::string out = "field,label,traces\n";
  for (const auto& row : report_rows(report)) {
    out += row.field;
    out += ',';
    out += row.label;
    out += ',';
    out += std::to_string(row.value);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const FilterReport& report) {
  nlohmann::ordered_json j;
  for (const auto& row : report_rows(report)) j[row.field] = row.value;
  return j.dump(2) + "\n";
}

}  // namespace parlmine::cleaning
