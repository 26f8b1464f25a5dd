#include "parlmine/enrich.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include <fmt/format.h>

#include "parlmine/cleaning.hpp"
#include "parlmine/csv.hpp"
#include "parlmine/error.hpp"
#include "parlmine/io.hpp"

namespace parlmine::enrich {

namespace {

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) return std::nullopt;
  return v;
}

std::optional<bool> parse_flag(const std::string& text) {
  if (text == "True" || text == "true" || text == "1" || text == "yes") return true;
  if (text == "False" || text == "false" || text == "0" || text == "no") return false;
  return std::nullopt;
}

AttributeValue typed_cell(const std::string& column, const std::string& text) {
  if (column.starts_with("is_")) {
    if (auto flag = parse_flag(text)) return *flag;
  }
  if (auto number = parse_number(text)) return *number;
  if (text == "True") return true;
  if (text == "False") return false;
  return text;
}

std::string cell_text(const AttributeValue& value) { return attribute_text(value); }

bool blank_row(const csv::Row& row) { return row.size() == 1 && row[0].empty(); }

// Number of traces whose [start, end] interval contains `day`.
class WorkloadIndex {
 public:
  explicit WorkloadIndex(const EventLog& log) {
    for (const auto& trace : log.traces) {
      std::optional<std::chrono::sys_days> lo;
      std::optional<std::chrono::sys_days> hi;
      for (const auto& e : trace.events) {
        if (!e.timestamp) continue;
        const std::chrono::sys_days d{*e.timestamp};
        if (!lo || d < *lo) lo = d;
        if (!hi || d > *hi) hi = d;
      }
      if (!lo) continue;
      starts_.push_back(*lo);
      ends_.push_back(*hi);
    }
    std::sort(starts_.begin(), starts_.end());
    std::sort(ends_.begin(), ends_.end());
  }

  std::size_t open_at(std::chrono::sys_days day) const {
    const auto started = std::upper_bound(starts_.begin(), starts_.end(), day) - starts_.begin();
    const auto finished = std::lower_bound(ends_.begin(), ends_.end(), day) - ends_.begin();
    return static_cast<std::size_t>(started - finished);
  }

 private:
  std::vector<std::chrono::sys_days> starts_;
  std::vector<std::chrono::sys_days> ends_;
};

}  // namespace

std::string count_feature(const std::string& activity) { return activity + ".count"; }

std::string delay_feature(const std::string& from, const std::string& to) { return from + ":" + to + ".delay"; }

SidecarTable parse_sidecar_csv(std::string_view text, std::string name) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows.front().empty() || rows.front().front().empty()) {
    throw Error(Errc::MalformedCsv, "sidecar '" + name + "' has no header");
  }
  SidecarTable table;
  table.name = std::move(name);
  const csv::Row header = rows.front();
  table.key = header.front();
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (blank_row(row)) continue;
    const std::string& key = row.front();
    if (!seen.insert(key).second) {
      throw Error(Errc::DuplicateSidecarKey, "sidecar '" + table.name + "' repeats key '" + key + "'",
                  SourcePosition{r + 1, 1, 0});
    }
    std::map<std::string, AttributeValue> values;
    for (std::size_t c = 1; c < header.size() && c < row.size(); ++c) {
      if (row[c].empty()) continue;
      values.emplace(header[c], typed_cell(header[c], row[c]));
    }
    table.rows.emplace_back(key, std::move(values));
  }
  return table;
}

SidecarTable load_sidecar_csv(const std::filesystem::path& path) {
  return parse_sidecar_csv(io::read_file(path), path.stem().string());
}

FeatureTable extract_features(const EventLog& log, const std::vector<SidecarTable>& sidecars,
                              const std::set<std::string>& passed_activities) {
  using SidecarIndex = std::unordered_map<std::string, const std::map<std::string, AttributeValue>*>;
  std::vector<SidecarIndex> by_year;
  std::vector<SidecarIndex> by_case;
  for (const auto& table : sidecars) {
    SidecarIndex index;
    for (const auto& [key, values] : table.rows) {
      if (!index.emplace(key, &values).second) {
        throw Error(Errc::DuplicateSidecarKey, "sidecar '" + table.name + "' repeats key '" + key + "'");
      }
    }
    if (table.key == "year") {
      by_year.push_back(std::move(index));
    } else if (table.key == "case_id") {
      by_case.push_back(std::move(index));
    } else {
      throw Error(Errc::BadConfig, "sidecar '" + table.name + "' is keyed by '" + table.key +
                                       "'; expected 'year' or 'case_id'");
    }
  }

  const auto activities = distinct_activities(log);
  const WorkloadIndex workload(log);
  FeatureTable table;
  table.feature_catalog.insert("event_count");
  table.feature_catalog.insert("is_passed_bill");
  for (const auto& a : activities) table.feature_catalog.insert(count_feature(a));

  table.rows.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    FeatureRow row;
    row.case_id = trace.case_id;
    auto& f = row.features;
    f["event_count"] = static_cast<double>(trace.events.size());

    std::map<std::string, double> counts;
    for (const auto& a : activities) counts[a] = 0.0;
    bool passed = false;
    for (const auto& e : trace.events) {
      counts[e.activity] += 1.0;
      passed = passed || passed_activities.contains(e.activity);
    }
    for (const auto& [a, n] : counts) f[count_feature(a)] = n;
    f["is_passed_bill"] = passed;

    // First occurrence of each activity, then the first other activity after it.
    std::map<std::string, std::size_t> first_index;
    for (std::size_t i = 0; i < trace.events.size(); ++i) first_index.try_emplace(trace.events[i].activity, i);
    for (const auto& [from, i] : first_index) {
      const auto& from_ts = trace.events[i].timestamp;
      if (!from_ts) continue;
      std::set<std::string> done;
      for (std::size_t j = i + 1; j < trace.events.size(); ++j) {
        const auto& to = trace.events[j];
        if (to.activity == from || !done.insert(to.activity).second) continue;
        if (!to.timestamp) continue;
        const std::string name = delay_feature(from, to.activity);
        f[name] = static_cast<double>(days_between(*from_ts, *to.timestamp));
        table.feature_catalog.insert(name);
      }
    }

    if (const auto start = trace.start()) {
      f["start_month"] = static_cast<double>(month_of(*start));
      f["start_year"] = static_cast<double>(year_of(*start));
      f["workload"] = static_cast<double>(workload.open_at(std::chrono::sys_days{*start}));
      table.feature_catalog.insert({"start_month", "start_year", "workload"});
      const std::string year_key = std::to_string(year_of(*start));
      for (const auto& index : by_year) {
        auto it = index.find(year_key);
        if (it == index.end()) continue;
        for (const auto& [name, value] : *it->second) {
          f.insert_or_assign(name, value);
          table.feature_catalog.insert(name);
        }
      }
    }
    for (const auto& index : by_case) {
      auto it = index.find(trace.case_id);
      if (it == index.end()) continue;
      for (const auto& [name, value] : *it->second) {
        f.insert_or_assign(name, value);
        table.feature_catalog.insert(name);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double compute_delay_threshold(const metrics::LogSummary& reference, double factor) {
  if (!(reference.mean_cycle_days > 0.0)) {
    throw Error(Errc::NonPositiveMean,
                fmt::format("reference mean cycle time {} must be positive", reference.mean_cycle_days));
  }
  return factor * reference.mean_cycle_days;
}

FeatureTable label_delayed(FeatureTable table, const EventLog& log, double threshold_days) {
  std::unordered_map<std::string, const Trace*> traces;
  for (const auto& t : log.traces) traces.emplace(t.case_id, &t);
  for (auto& row : table.rows) {
    auto it = traces.find(row.case_id);
    if (it == traces.end()) throw Error(Errc::UnknownCase, "case '" + row.case_id + "' is not in the log");
    row.is_delayed = static_cast<double>(cleaning::cycle_time_days(*it->second)) > threshold_days;
  }
  return table;
}

std::size_t count_delayed(const FeatureTable& table) {
  return static_cast<std::size_t>(std::count_if(table.rows.begin(), table.rows.end(),
                                                [](const FeatureRow& r) { return r.is_delayed.value_or(false); }));
}

std::string to_csv(const FeatureTable& table) {
  csv::Row header{"case_id"};
  header.insert(header.end(), table.feature_catalog.begin(), table.feature_catalog.end());
  header.push_back("is_delayed");
  std::string out = csv::format_row(header);
  for (const auto& row : table.rows) {
    csv::Row cells{row.case_id};
    for (const auto& name : table.feature_catalog) {
      auto it = row.features.find(name);
      cells.push_back(it == row.features.end() ? std::string() : cell_text(it->second));
    }
    cells.push_back(row.is_delayed ? (*row.is_delayed ? "True" : "False") : "");
    out += csv::format_row(cells);
  }
  return out;
}

FeatureTable parse_feature_csv(std::string_view text) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows.front().empty() || rows.front().front() != "case_id") {
    throw Error(Errc::MalformedCsv, "feature table must start with a 'case_id' column");
  }
  const csv::Row header = rows.front();
  FeatureTable table;
  std::optional<std::size_t> label_column;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] == "is_delayed") {
      label_column = c;
    } else {
      table.feature_catalog.insert(header[c]);
    }
  }
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (blank_row(cells)) continue;
    if (cells.size() != header.size()) {
      throw Error(Errc::MalformedCsv,
                  fmt::format("row has {} cells, header has {}", cells.size(), header.size()),
                  SourcePosition{r + 1, 1, 0});
    }
    FeatureRow row;
    row.case_id = cells[0];
    if (!seen.insert(row.case_id).second) {
      throw Error(Errc::MalformedCsv, "duplicate case_id '" + row.case_id + "'", SourcePosition{r + 1, 1, 0});
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c].empty()) continue;
      if (label_column && c == *label_column) {
        auto flag = parse_flag(cells[c]);
        if (!flag) {
          throw Error(Errc::MalformedCsv, "is_delayed must be True or False", SourcePosition{r + 1, c + 1, 0});
        }
        row.is_delayed = *flag;
      } else {
        row.features.emplace(header[c], typed_cell(header[c], cells[c]));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

FeatureTable load_feature_csv(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_feature_csv(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.where());
  }
}

}  // namespace parlmine::enrich
