#include "parlmine/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "parlmine/cleaning.hpp"
#include "parlmine/error.hpp"

namespace parlmine::metrics {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

LogSummary summarize(const EventLog& log) {
  if (log.traces.empty()) throw Error(Errc::EmptyLog, "cannot summarize log '" + log.name + "' without traces");
  LogSummary s;
  s.n_cases = log.traces.size();
  std::set<std::string> activities;
  std::set<std::vector<std::string>> variants;
  std::vector<double> cycles;
  cycles.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    s.n_events += trace.events.size();
    std::vector<std::string> variant;
    variant.reserve(trace.events.size());
    for (const auto& e : trace.events) {
      activities.insert(e.activity);
      variant.push_back(e.activity);
    }
    variants.insert(std::move(variant));
    cycles.push_back(static_cast<double>(cleaning::cycle_time_days(trace)));
  }
  s.n_activities = activities.size();
  s.n_variants = variants.size();
  s.mean_events_per_case = static_cast<double>(s.n_events) / static_cast<double>(s.n_cases);

  double sum = 0.0;
  for (double c : cycles) sum += c;
  s.mean_cycle_days = sum / static_cast<double>(cycles.size());
  if (cycles.size() > 1) {
    double ss = 0.0;
    for (double c : cycles) ss += (c - s.mean_cycle_days) * (c - s.mean_cycle_days);
    s.std_cycle_days = std::sqrt(ss / static_cast<double>(cycles.size() - 1));
  }
  s.median_cycle_days = median(std::move(cycles));
  return s;
}

YearlySeries yearly_frequencies(const EventLog& log) {
  YearlySeries series{"frequency", {}};
  for (const auto& trace : log.traces) {
    if (auto start = trace.start()) series.points[year_of(*start)] += 1.0;
  }
  if (!series.points.empty()) {
    const int first = series.points.begin()->first;
    const int last = series.points.rbegin()->first;
    for (int y = first; y <= last; ++y) series.points.try_emplace(y, 0.0);
  }
  return series;
}

YearlySeries yearly_mean_cycle_times(const EventLog& log) {
  std::map<int, std::pair<double, std::size_t>> acc;
  for (const auto& trace : log.traces) {
    auto start = trace.start();
    if (!start) continue;
    auto& [sum, n] = acc[year_of(*start)];
    sum += static_cast<double>(cleaning::cycle_time_days(trace));
    ++n;
  }
  YearlySeries series{"mean_cycle_days", {}};
  for (const auto& [year, sn] : acc) series.points[year] = sn.first / static_cast<double>(sn.second);
  return series;
}

std::string summary_to_csv(const LogSummary& s) {
  return fmt::format(
      "n_cases,n_events,mean_events_per_case,n_activities,n_variants,mean_cycle_days,median_cycle_days,"
      "std_cycle_days\n{},{},{},{},{},{},{},{}\n",
      s.n_cases, s.n_events, s.mean_events_per_case, s.n_activities, s.n_variants, s.mean_cycle_days,
      s.median_cycle_days, s.std_cycle_days);
}

std::string summary_to_json(const LogSummary& s) {
  nlohmann::ordered_json j;
  j["n_cases"] = s.n_cases;
  j["n_events"] = s.n_events;
  j["mean_events_per_case"] = s.mean_events_per_case;
  j["n_activities"] = s.n_activities;
  j["n_variants"] = s.n_variants;
  j["mean_cycle_days"] = s.mean_cycle_days;
  j["median_cycle_days"] = s.median_cycle_days;
  j["std_cycle_days"] = s.std_cycle_days;
  return j.dump(2) + "\n";
}

std::string series_to_csv(const YearlySeries& series) {
  std::string out = "year,value\n";
  for (const auto& [year, value] : series.points) out += fmt::format("{},{}\n", year, value);
  return out;
}

std::string series_to_json(const YearlySeries& series) {
  nlohmann::ordered_json j;
  j["metric"] = series.metric_name;
  auto& points = j["points"] = nlohmann::ordered_json::object();
  for (const auto& [year, value] : series.points) points[std::to_string(year)] = value;
  return j.dump(2) + "\n";
}

}  // namespace parlmine::metrics
