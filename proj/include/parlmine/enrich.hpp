#pragma once

// Per-trace feature tables for delay labeling and rule induction.
//
// Feature names: event_count, <A>.count, <A>:<B>.delay (days from the first
// A to the first B after it), start_month, start_year, workload,
// is_passed_bill, plus every column of the joined sidecar tables
// (is_election_year, squire_index by start year; pdf_size, word_count by
// case id).

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parlmine/eventlog.hpp"
#include "parlmine/metrics.hpp"

namespace parlmine::enrich {

inline constexpr double kDefaultDelayFactor = 1.10;

struct SidecarTable {
  std::string name;
  std::string key;  // "year" or "case_id"
  std::vector<std::pair<std::string, std::map<std::string, AttributeValue>>> rows;
};

// First column is the join key. Columns named is_* are read as flags,
// other cells as numbers when they parse fully, else as text. Empty cells
// are absent. Throws Error{DuplicateSidecarKey}, Error{MalformedCsv}.
SidecarTable parse_sidecar_csv(std::string_view text, std::string name);
SidecarTable load_sidecar_csv(const std::filesystem::path& path);

struct FeatureRow {
  std::string case_id;
  AttributeMap features;
  std::optional<bool> is_delayed;
};

struct FeatureTable {
  std::vector<FeatureRow> rows;
  std::set<std::string> feature_catalog;
};

// Throws Error{DuplicateSidecarKey} or Error{BadConfig} for a sidecar whose
// key is neither "year" nor "case_id".
FeatureTable extract_features(const EventLog& log, const std::vector<SidecarTable>& sidecars,
                              const std::set<std::string>& passed_activities);

// factor x mean cycle time of the reference log. Throws Error{NonPositiveMean}.
double compute_delay_threshold(const metrics::LogSummary& reference, double factor = kDefaultDelayFactor);

// is_delayed := cycle time > threshold_days. Throws Error{UnknownCase}.
FeatureTable label_delayed(FeatureTable table, const EventLog& log, double threshold_days);

std::size_t count_delayed(const FeatureTable& table);

// One row per trace: case_id, catalog columns, is_delayed. Absent values
// are empty cells; flags are True/False.
std::string to_csv(const FeatureTable& table);
FeatureTable parse_feature_csv(std::string_view text);
FeatureTable load_feature_csv(const std::filesystem::path& path);

std::string count_feature(const std::string& activity);
std::string delay_feature(const std::string& from, const std::string& to);

}  // namespace parlmine::enrich
