#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parlmine/eventlog.hpp"
#include "parlmine/metrics.hpp"

namespace parlmine::viz {

struct DottedChartSpec {
  long window_days = 1461;  // four years of relative time
  int width_px = 1200;
  int height_px = 800;
  // Activity -> CSS color. Activities missing here get generated colors,
  // assigned in lexicographic activity order.
  std::map<std::string, std::string> color_map;
  double dot_radius_px = 2.0;
  std::string title;
};

struct LineChartSpec {
  std::vector<std::pair<std::string, metrics::YearlySeries>> series;
  int width_px = 900;
  int height_px = 500;
  std::string y_label = "days";
  std::string title;
};

// Distinct color for the i-th activity.
std::string palette_color(std::size_t index);

// Completes `spec.color_map` for every activity of `log`.
std::map<std::string, std::string> assign_colors(const EventLog& log, const std::map<std::string, std::string>& fixed);

// Row order of the dotted chart: ascending cycle time, ties by case id.
std::vector<std::size_t> dotted_chart_row_order(const EventLog& log);

// Each trace is one row; x is days since the trace's first event. Dots past
// window_days are clipped. Throws Error{EmptyLog}.
std::string render_dotted_chart(const EventLog& log, const DottedChartSpec& spec);

// One polyline per series, y axis from 0 to 1.05 x the largest value.
// Throws Error{EmptySeries}.
std::string render_yearly_lines(const LineChartSpec& spec);

}  // namespace parlmine::viz
