#include "parlmine/viz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "parlmine/cleaning.hpp"
#include "parlmine/error.hpp"
#include "xml_dom.hpp"

namespace parlmine::viz {

namespace {

constexpr std::array<const char*, 20> kBasePalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
};

std::string hsl_to_hex(double h, double s, double l) {
  const double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = l - c / 2.0;
  auto channel = [&](double v) { return static_cast<int>(std::lround((v + m) * 255.0)); };
  return fmt::format("#{:02x}{:02x}{:02x}", channel(r), channel(g), channel(b));
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

struct Frame {
  double left, top, width, height;
};

}  // namespace

std::string palette_color(std::size_t index) {
  if (index < kBasePalette.size()) return kBasePalette[index];
  const std::size_t k = index - kBasePalette.size();
  // Golden-angle hue walk; lightness cycles through four bands.
  const double hue = std::fmod(static_cast<double>(k) * 137.507764, 360.0);
  const double lightness = 0.30 + 0.12 * static_cast<double>((k / 7) % 4);
  return hsl_to_hex(hue, 0.65, lightness);
}

std::map<std::string, std::string> assign_colors(const EventLog& log, const std::map<std::string, std::string>& fixed) {
  std::map<std::string, std::string> colors;
  std::set<std::string> used;
  for (const auto& [activity, color] : fixed) used.insert(color);
  std::size_t next = 0;
  for (const auto& activity : distinct_activities(log)) {
    if (auto it = fixed.find(activity); it != fixed.end()) {
      colors[activity] = it->second;
      continue;
    }
    std::string color = palette_color(next++);
    while (used.contains(color)) color = palette_color(next++);
    used.insert(color);
    colors[activity] = std::move(color);
  }
  return colors;
}

std::vector<std::size_t> dotted_chart_row_order(const EventLog& log) {
  std::vector<long> cycle(log.traces.size(), 0);
  for (std::size_t i = 0; i < log.traces.size(); ++i) {
    const auto& t = log.traces[i];
    const bool timed = std::any_of(t.events.begin(), t.events.end(), [](const Event& e) { return e.timestamp.has_value(); });
    cycle[i] = timed ? cleaning::cycle_time_days(t) : 0;
  }
  std::vector<std::size_t> order(log.traces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cycle[a] != cycle[b]) return cycle[a] < cycle[b];
    return log.traces[a].case_id < log.traces[b].case_id;
  });
  return order;
}

std::string render_dotted_chart(const EventLog& log, const DottedChartSpec& spec) {
  if (log.traces.empty()) throw Error(Errc::EmptyLog, "dotted chart of an empty log");
  if (spec.window_days <= 0) throw Error(Errc::BadConfig, "window_days must be positive");
  const auto colors = assign_colors(log, spec.color_map);
  const auto order = dotted_chart_row_order(log);
  const Frame frame{70.0, 40.0, static_cast<double>(spec.width_px) - 70.0 - 260.0,
                    static_cast<double>(spec.height_px) - 40.0 - 50.0};
  const double row_height = frame.height / static_cast<double>(order.size());
  const double window = static_cast<double>(spec.window_days);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      spec.width_px, spec.height_px, spec.width_px, spec.height_px);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", spec.width_px,
                     spec.height_px);
  const std::string title = spec.title.empty() ? log.name : spec.title;
  out += fmt::format("<text class=\"title\" x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
                     num(frame.left), xml::escape(title));

  // Axes and yearly ticks.
  const double bottom = frame.top + frame.height;
  out += fmt::format("<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n");
  out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(frame.left), num(bottom),
                     num(frame.left + frame.width), num(bottom));
  out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(frame.left), num(frame.top),
                     num(frame.left), num(bottom));
  out += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (long day = 0; day <= spec.window_days; day += 365) {
    const double x = frame.left + static_cast<double>(day) / window * frame.width;
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333333\"/>\n", num(x), num(bottom),
                       num(bottom + 5));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(x), num(bottom + 18), day);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">days since first event</text>\n",
                     num(frame.left + frame.width / 2.0), num(bottom + 38));
  out += fmt::format(
      "<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">cases sorted by cycle "
      "time</text>\n",
      num(frame.top + frame.height / 2.0));
  out += "</g>\n";

  out += "<g class=\"dots\" stroke=\"none\">\n";
  for (std::size_t row = 0; row < order.size(); ++row) {
    const auto& trace = log.traces[order[row]];
    const auto start = [&]() -> std::optional<Date> {
      std::optional<Date> s;
      for (const auto& e : trace.events) {
        if (e.timestamp && (!s || std::chrono::sys_days{*e.timestamp} < std::chrono::sys_days{*s})) s = e.timestamp;
      }
      return s;
    }();
    if (!start) continue;
    const double y = frame.top + (static_cast<double>(row) + 0.5) * row_height;
    for (const auto& e : trace.events) {
      if (!e.timestamp) continue;
      const long day = days_between(*start, *e.timestamp);
      if (day > spec.window_days) continue;
      const double x = frame.left + static_cast<double>(day) / window * frame.width;
      out += fmt::format("<circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" data-case=\"{}\" data-day=\"{}\"/>\n",
                         num(x), num(y), num(spec.dot_radius_px), colors.at(e.activity), xml::escape(trace.case_id), day);
    }
  }
  out += "</g>\n";

  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double legend_x = frame.left + frame.width + 20.0;
  double legend_y = frame.top;
  for (const auto& [activity, color] : colors) {
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n", num(legend_x),
                       num(legend_y), color);
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(legend_x + 16.0), num(legend_y + 9.0),
                       xml::escape(activity.empty() ? "(no activity)" : activity));
    legend_y += 15.0;
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string render_yearly_lines(const LineChartSpec& spec) {
  if (spec.series.empty()) throw Error(Errc::EmptySeries, "line chart needs at least one series");
  int min_year = std::numeric_limits<int>::max();
  int max_year = std::numeric_limits<int>::min();
  double max_value = 0.0;
  for (const auto& [label, series] : spec.series) {
    if (series.points.empty()) throw Error(Errc::EmptySeries, "series '" + label + "' has no points");
    min_year = std::min(min_year, series.points.begin()->first);
    max_year = std::max(max_year, series.points.rbegin()->first);
    for (const auto& [year, value] : series.points) max_value = std::max(max_value, value);
  }
  const double y_top = max_value > 0.0 ? 1.05 * max_value : 1.0;
  const Frame frame{70.0, 40.0, static_cast<double>(spec.width_px) - 70.0 - 180.0,
                    static_cast<double>(spec.height_px) - 40.0 - 50.0};
  const double bottom = frame.top + frame.height;
  const double span = static_cast<double>(max_year - min_year);
  auto x_of = [&](int year) {
    if (span == 0.0) return frame.left + frame.width / 2.0;
    return frame.left + static_cast<double>(year - min_year) / span * frame.width;
  };
  auto y_of = [&](double v) { return bottom - v / y_top * frame.height; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      spec.width_px, spec.height_px, spec.width_px, spec.height_px);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", spec.width_px,
                     spec.height_px);
  if (!spec.title.empty()) {
    out += fmt::format("<text class=\"title\" x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{}</text>\n",
                       num(frame.left), xml::escape(spec.title));
  }
  out += "<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
  out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(frame.left), num(bottom),
                     num(frame.left + frame.width), num(bottom));
  out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(frame.left), num(frame.top),
                     num(frame.left), num(bottom));
  out += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  const int year_step = std::max(1, (max_year - min_year) / 10);
  for (int year = min_year; year <= max_year; year += year_step) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(x_of(year)),
                       num(bottom + 18), year);
  }
  for (int i = 0; i <= 5; ++i) {
    const double v = y_top * i / 5.0;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(frame.left - 6), num(y_of(v) + 4),
                       fmt::format("{:.0f}", v));
  }
  out += fmt::format(
      "<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">{1}</text>\n",
      num(frame.top + frame.height / 2.0), xml::escape(spec.y_label));
  out += "</g>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const auto& [label, series] = spec.series[s];
    const std::string color = palette_color(s);
    std::string points;
    for (const auto& [year, value] : series.points) {
      if (!points.empty()) points += ' ';
      points += num(x_of(year)) + "," + num(y_of(value));
    }
    out += fmt::format("<g class=\"series\" data-label=\"{}\">\n", xml::escape(label));
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", points, color);
    for (const auto& [year, value] : series.points) {
      out += fmt::format("<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", num(x_of(year)),
                         num(y_of(value)), color);
    }
    out += "</g>\n";
  }
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const double ly = frame.top + 18.0 * static_cast<double>(s);
    const double lx = frame.left + frame.width + 20.0;
    out += fmt::format("<g class=\"legend-entry\"><line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" "
                       "stroke-width=\"2\"/><text x=\"{}\" y=\"{}\">{}</text></g>\n",
                       num(lx), num(ly + 6), num(lx + 20), num(ly + 6), palette_color(s), num(lx + 26), num(ly + 10),
                       xml::escape(spec.series[s].first));
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace parlmine::viz
