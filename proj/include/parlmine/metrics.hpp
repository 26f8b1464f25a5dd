#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "parlmine/eventlog.hpp"

namespace parlmine::metrics {

struct LogSummary {
  std::size_t n_cases = 0;
  std::size_t n_events = 0;
  double mean_events_per_case = 0.0;
  std::size_t n_activities = 0;
  std::size_t n_variants = 0;  // distinct activity sequences
  double mean_cycle_days = 0.0;
  double median_cycle_days = 0.0;
  double std_cycle_days = 0.0;  // sample standard deviation; 0 for a single case
};

struct YearlySeries {
  std::string metric_name;
  std::map<int, double> points;
};

// Throws Error{EmptyLog} for a log without traces and
// Error{NoTimestampedEvents} for a trace without any timestamp.
LogSummary summarize(const EventLog& log);

// Traces per start year; years without traces inside the observed span are 0.
YearlySeries yearly_frequencies(const EventLog& log);

// Mean cycle time per start year; years without traces are absent.
YearlySeries yearly_mean_cycle_times(const EventLog& log);

double median(std::vector<double> values);

std::string summary_to_csv(const LogSummary& summary);
std::string summary_to_json(const LogSummary& summary);
std::string series_to_csv(const YearlySeries& series);
std::string series_to_json(const YearlySeries& series);

}  // namespace parlmine::metrics
