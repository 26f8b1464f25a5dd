#include "parlmine/xes.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "parlmine/error.hpp"
#include "parlmine/io.hpp"
#include "xml_dom.hpp"

namespace parlmine::xes {

namespace {

constexpr std::string_view kConceptName = "concept:name";
constexpr std::string_view kTimestamp = "time:timestamp";
constexpr std::string_view kProvenancePrefix = "provenance:";

std::string format_float(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INF" : "-INF";
  return fmt::format("{}", value);
}

void write_attribute(std::ostream& out, int depth, const std::string& key, const AttributeValue& value) {
  const std::string indent(static_cast<std::size_t>(depth), '\t');
  const std::string k = xml::escape(key);
  if (const auto* s = std::get_if<std::string>(&value)) {
    out << indent << "<string key=\"" << k << "\" value=\"" << xml::escape(*s) << "\"/>\n";
  } else if (const auto* list = std::get_if<TextList>(&value)) {
    out << indent << "<list key=\"" << k << "\">\n" << indent << "\t<values>\n";
    for (const auto& item : *list) {
      out << indent << "\t\t<string key=\"item\" value=\"" << xml::escape(item) << "\"/>\n";
    }
    out << indent << "\t</values>\n" << indent << "</list>\n";
  } else if (const auto* d = std::get_if<double>(&value)) {
    out << indent << "<float key=\"" << k << "\" value=\"" << format_float(*d) << "\"/>\n";
  } else if (const auto* date = std::get_if<Date>(&value)) {
    out << indent << "<date key=\"" << k << "\" value=\"" << format_xes_timestamp(*date) << "\"/>\n";
  } else if (const auto* b = std::get_if<bool>(&value)) {
    out << indent << "<boolean key=\"" << k << "\" value=\"" << (*b ? "true" : "false") << "\"/>\n";
  }
}

[[noreturn]] void malformed(const xml::Element& at, const std::string& message) {
  throw Error(Errc::MalformedXes, message, SourcePosition{at.line, at.column, 0});
}

const std::string& required(const xml::Element& e, std::string_view name) {
  const auto* v = e.attribute(name);
  if (!v) malformed(e, "<" + e.name + "> lacks '" + std::string(name) + "'");
  return *v;
}

bool is_attribute_element(std::string_view name) {
  return name == "string" || name == "date" || name == "int" || name == "float" || name == "boolean" ||
         name == "id" || name == "list";
}

std::string scalar_text(const xml::Element& e) {
  if (e.name == "list") malformed(e, "nested lists are not supported");
  return required(e, "value");
}

AttributeValue read_value(const xml::Element& e) {
  if (e.name == "string" || e.name == "id") return required(e, "value");
  if (e.name == "date") {
    auto date = parse_xes_timestamp(required(e, "value"));
    if (!date) malformed(e, "invalid date '" + required(e, "value") + "'");
    return *date;
  }
  if (e.name == "int" || e.name == "float") {
    const std::string& text = required(e, "value");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) malformed(e, "invalid number '" + text + "'");
    return v;
  }
  if (e.name == "boolean") {
    const std::string& text = required(e, "value");
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    malformed(e, "invalid boolean '" + text + "'");
  }
  // list: items live under <values> (IEEE 1849-2016) or directly below.
  TextList items;
  for (const auto& child : e.children) {
    if (child.name == "values") {
      for (const auto& item : child.children) {
        if (is_attribute_element(item.name)) items.push_back(scalar_text(item));
      }
    } else if (is_attribute_element(child.name)) {
      items.push_back(scalar_text(child));
    }
  }
  return items;
}

Event read_event(const xml::Element& element) {
  Event ev;
  for (const auto& child : element.children) {
    if (!is_attribute_element(child.name)) continue;
    const std::string& key = required(child, "key");
    if (key == kConceptName && child.name == "string") {
      ev.activity = required(child, "value");
    } else if (key == kTimestamp && child.name == "date") {
      ev.timestamp = std::get<Date>(read_value(child));
    } else {
      ev.attributes.insert_or_assign(key, read_value(child));
    }
  }
  return ev;
}

Trace read_trace(const xml::Element& element, std::size_t ordinal) {
  Trace trace;
  bool has_id = false;
  for (const auto& child : element.children) {
    if (child.name == "event") {
      trace.events.push_back(read_event(child));
    } else if (is_attribute_element(child.name)) {
      const std::string& key = required(child, "key");
      if (key == kConceptName && child.name == "string") {
        trace.case_id = required(child, "value");
        has_id = true;
      } else {
        trace.case_attributes.insert_or_assign(key, read_value(child));
      }
    }
  }
  if (!has_id) trace.case_id = "trace#" + std::to_string(ordinal + 1);
  return trace;
}

}  // namespace

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<log xes.version=\"1849-2016\" xes.features=\"nested-attributes\" "
         "xmlns=\"http://www.xes-standard.org/\">\n"
      << "\t<extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      << "\t<extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  out << "\t<string key=\"concept:name\" value=\"" << xml::escape(log.name) << "\"/>\n";
  for (const auto& [k, v] : log.provenance) {
    out << "\t<string key=\"" << xml::escape(std::string(kProvenancePrefix) + k) << "\" value=\"" << xml::escape(v)
        << "\"/>\n";
  }
  for (const auto& trace : log.traces) {
    out << "\t<trace>\n";
    out << "\t\t<string key=\"concept:name\" value=\"" << xml::escape(trace.case_id) << "\"/>\n";
    for (const auto& [k, v] : trace.case_attributes) write_attribute(out, 2, k, v);
    for (const auto& ev : trace.events) {
      out << "\t\t<event>\n";
      if (!ev.activity.empty()) {
        out << "\t\t\t<string key=\"concept:name\" value=\"" << xml::escape(ev.activity) << "\"/>\n";
      }
      if (ev.timestamp) {
        out << "\t\t\t<date key=\"time:timestamp\" value=\"" << format_xes_timestamp(*ev.timestamp) << "\"/>\n";
      }
      for (const auto& [k, v] : ev.attributes) write_attribute(out, 3, k, v);
      out << "\t\t</event>\n";
    }
    out << "\t</trace>\n";
  }
  out << "</log>\n";
  if (!out) throw Error(Errc::SinkFailure, "write failure while emitting XES");
}

void write_xes_file(const EventLog& log, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_xes(log, buffer);
  io::write_file_atomic(path, buffer.str());
}

EventLog read_xes(std::string_view bytes) {
  const xml::Element root = xml::parse(bytes, Errc::MalformedXes);
  if (root.name != "log") malformed(root, "root element is <" + root.name + ">, expected <log>");
  EventLog log;
  std::unordered_set<std::string> seen;
  for (const auto& child : root.children) {
    if (child.name == "trace") {
      Trace trace = read_trace(child, log.traces.size());
      if (!seen.insert(trace.case_id).second) malformed(child, "duplicate case id '" + trace.case_id + "'");
      log.traces.push_back(std::move(trace));
    } else if (child.name == "string") {
      const std::string& key = required(child, "key");
      if (key == kConceptName) {
        log.name = required(child, "value");
      } else if (key.starts_with(kProvenancePrefix)) {
        log.provenance[key.substr(kProvenancePrefix.size())] = required(child, "value");
      }
    }
  }
  return log;
}

EventLog read_xes(std::istream& source) {
  std::string bytes{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return read_xes(std::string_view(bytes));
}

EventLog read_xes_file(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  try {
    return read_xes(std::string_view(bytes));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.where());
  }
}

}  // namespace parlmine::xes
