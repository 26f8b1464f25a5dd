#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "parlmine/date.hpp"
#include "parlmine/ingest.hpp"

namespace parlmine {

using TextList = std::vector<std::string>;

// text | text_list | number | date | flag
using AttributeValue = std::variant<std::string, TextList, double, Date, bool>;
using AttributeMap = std::map<std::string, AttributeValue>;

// Renders any attribute value as plain text (lists joined with "; ",
// booleans as True/False, dates as yyyy-MM-dd).
std::string attribute_text(const AttributeValue& value);

struct Event {
  std::string activity;  // empty when the source had no activity label
  std::optional<Date> timestamp;
  AttributeMap attributes;

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string case_id;
  AttributeMap case_attributes;
  std::vector<Event> events;

  bool operator==(const Trace&) const = default;

  // Timestamp of the first event, if that event has one.
  std::optional<Date> start() const;
};

struct EventLog {
  std::string name;
  std::vector<Trace> traces;
  std::map<std::string, std::string> provenance;

  bool operator==(const EventLog&) const = default;

  std::size_t event_count() const;
};

// Keys under which document properties are stored as event attributes.
namespace keys {
inline constexpr const char* kVSysL = "VSysL";
inline constexpr const char* kDokTypL = "DokTypL";
inline constexpr const char* kDokArtL = "DokArtL";
inline constexpr const char* kDokDat = "DokDat";
}  // namespace keys

// One trace per process, one event per document. The activity is DokTypL,
// the timestamp the parsed DokDat (absent when missing or unparseable).
// Events are stably ordered by timestamp; events without a timestamp go last.
// Throws Error{NoDateFormats} when `date_formats` is empty.
EventLog build_log(const ingest::RawExport& raw, std::span<const std::string> date_formats);

// Concatenates logs. Colliding case ids are made unique by prefixing the
// source log's name.
EventLog merge_logs(std::span<const EventLog> logs, std::string name);

void sort_list_attributes(Trace& trace);
EventLog sort_list_attributes(EventLog log);

EventLog filter_by_case_attribute(const EventLog& log, const std::string& key, const std::string& value);

// Keeps traces whose first event falls in [first_year, last_year].
// Throws Error{BadWindow} when first_year > last_year.
EventLog filter_by_time_window(const EventLog& log, int first_year, int last_year);

struct RelabelRule {
  std::string activity_pattern;               // ECMAScript regex, full match
  std::optional<std::string> attribute;       // event attribute the predicate reads
  std::string attribute_pattern;              // regex searched in the attribute's text
  std::string new_label;
};

// Parses "<activity regex> [| <attribute> ~ <regex>] => <new label>".
// Throws Error{InvalidPattern}.
RelabelRule parse_relabel_rule(const std::string& text);

// First matching rule rewrites the activity. Throws Error{InvalidPattern}.
EventLog relabel_readings(const EventLog& log, std::span<const RelabelRule> rules);

std::vector<std::string> distinct_activities(const EventLog& log);

}  // namespace parlmine
