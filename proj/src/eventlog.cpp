#include "parlmine/eventlog.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "parlmine/error.hpp"

namespace parlmine {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void put_text(AttributeMap& map, const std::string& key, const std::optional<std::string>& value) {
  if (value) map.emplace(key, *value);
}

void put_list(AttributeMap& map, const std::string& key, const std::vector<std::string>& value) {
  if (!value.empty()) map.emplace(key, TextList(value));
}

Event make_event(const ingest::RawDocument& doc, std::span<const std::string> date_formats) {
  Event ev;
  ev.activity = doc.dok_typ_l.value_or("");
  if (doc.date_text) ev.timestamp = parse_date_any(*doc.date_text, date_formats);
  auto& a = ev.attributes;
  put_text(a, "DokId", doc.internal_id);
  put_text(a, "Titel", doc.title);
  put_text(a, keys::kDokDat, doc.date_text);
  put_text(a, keys::kDokTypL, doc.dok_typ_l);
  put_text(a, keys::kDokArtL, doc.dok_art_l);
  put_text(a, "LokURL", doc.url);
  put_list(a, "Desk", doc.descriptors);
  put_list(a, "Urheber", doc.authors);
  put_list(a, "Redner", doc.speakers);
  put_text(a, "Abstract", doc.abstract);
  for (const auto& [k, v] : doc.extra_attributes) a.emplace(k, v);
  return ev;
}

void order_events(std::vector<Event>& events) {
  std::stable_sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
    if (!x.timestamp) return false;
    if (!y.timestamp) return true;
    return std::chrono::sys_days{*x.timestamp} < std::chrono::sys_days{*y.timestamp};
  });
}

std::regex compile(const std::string& pattern) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw Error(Errc::InvalidPattern, "invalid pattern '" + pattern + "': " + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

}  // namespace

std::string attribute_text(const AttributeValue& value) {
  return std::visit(overloaded{
                        [](const std::string& s) { return s; },
                        [](const TextList& l) {
                          std::string out;
                          for (const auto& item : l) {
                            if (!out.empty()) out += "; ";
                            out += item;
                          }
                          return out;
                        },
                        [](double d) { return fmt::format("{}", d); },
                        [](const Date& d) { return format_iso_date(d); },
                        [](bool b) { return std::string(b ? "True" : "False"); },
                    },
                    value);
}

std::optional<Date> Trace::start() const {
  if (events.empty()) return std::nullopt;
  return events.front().timestamp;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += t.events.size();
  return n;
}

EventLog build_log(const ingest::RawExport& raw, std::span<const std::string> date_formats) {
  if (date_formats.empty()) throw Error(Errc::NoDateFormats, "at least one date pattern is required");
  EventLog log;
  log.name = raw.source_name;
  log.provenance["source"] = raw.source_name;
  std::string patterns;
  for (const auto& p : date_formats) {
    if (!patterns.empty()) patterns += "|";
    patterns += p;
  }
  log.provenance["date_formats"] = patterns;

  std::unordered_set<std::string> used_ids;
  log.traces.reserve(raw.processes.size());
  for (std::size_t i = 0; i < raw.processes.size(); ++i) {
    const auto& proc = raw.processes[i];
    Trace trace;
    if (proc.internal_id && !used_ids.contains(*proc.internal_id)) {
      trace.case_id = *proc.internal_id;
    } else {
      trace.case_id = raw.source_name + "#" + std::to_string(i + 1);
      while (used_ids.contains(trace.case_id)) trace.case_id += "~";
    }
    used_ids.insert(trace.case_id);

    auto& ca = trace.case_attributes;
    put_text(ca, keys::kVSysL, proc.v_sys_l);
    put_text(ca, "VSys", proc.v_sys);
    put_text(ca, "VTyp", proc.v_typ);
    put_text(ca, "VTypL", proc.v_typ_l);
    put_list(ca, "Nebeneintrag", proc.side_entries);
    for (const auto& [k, v] : proc.extra_attributes) ca.emplace(k, v);

    trace.events.reserve(proc.documents.size());
    for (const auto& doc : proc.documents) trace.events.push_back(make_event(doc, date_formats));
    order_events(trace.events);
    sort_list_attributes(trace);
    log.traces.push_back(std::move(trace));
  }
  return log;
}

EventLog merge_logs(std::span<const EventLog> logs, std::string name) {
  EventLog out;
  out.name = std::move(name);
  std::unordered_set<std::string> used;
  std::string sources;
  for (const auto& log : logs) {
    if (!sources.empty()) sources += "|";
    sources += log.name;
    for (const auto& trace : log.traces) {
      Trace copy = trace;
      if (used.contains(copy.case_id)) {
        copy.case_id = log.name + ":" + copy.case_id;
        while (used.contains(copy.case_id)) copy.case_id += "~";
      }
      used.insert(copy.case_id);
      out.traces.push_back(std::move(copy));
    }
  }
  out.provenance["sources"] = sources;
  return out;
}

void sort_list_attributes(Trace& trace) {
  auto sort_map = [](AttributeMap& map) {
    for (auto& [key, value] : map) {
      if (auto* list = std::get_if<TextList>(&value)) std::sort(list->begin(), list->end());
    }
  };
  sort_map(trace.case_attributes);
  for (auto& ev : trace.events) sort_map(ev.attributes);
}

EventLog sort_list_attributes(EventLog log) {
  for (auto& t : log.traces) sort_list_attributes(t);
  return log;
}

EventLog filter_by_case_attribute(const EventLog& log, const std::string& key, const std::string& value) {
  EventLog out;
  out.name = log.name;
  out.provenance = log.provenance;
  for (const auto& trace : log.traces) {
    auto it = trace.case_attributes.find(key);
    if (it == trace.case_attributes.end()) continue;
    const auto* text = std::get_if<std::string>(&it->second);
    if (text && *text == value) out.traces.push_back(trace);
  }
  out.provenance["filter." + key] = value;
  return out;
}

EventLog filter_by_time_window(const EventLog& log, int first_year, int last_year) {
  if (first_year > last_year) {
    throw Error(Errc::BadWindow, fmt::format("window [{}, {}] is empty", first_year, last_year));
  }
  EventLog out;
  out.name = log.name;
  out.provenance = log.provenance;
  for (const auto& trace : log.traces) {
    const auto start = trace.start();
    if (!start) continue;
    const int y = year_of(*start);
    if (y >= first_year && y <= last_year) out.traces.push_back(trace);
  }
  out.provenance["window"] = fmt::format("{}-{}", first_year, last_year);
  return out;
}

RelabelRule parse_relabel_rule(const std::string& text) {
  const auto arrow = text.rfind("=>");
  if (arrow == std::string::npos) throw Error(Errc::InvalidPattern, "relabel rule lacks '=>': " + text);
  RelabelRule rule;
  rule.new_label = trim(text.substr(arrow + 2));
  std::string lhs = text.substr(0, arrow);
  const auto bar = lhs.find('|');
  if (bar != std::string::npos) {
    const std::string predicate = lhs.substr(bar + 1);
    lhs = lhs.substr(0, bar);
    const auto tilde = predicate.find('~');
    if (tilde == std::string::npos) throw Error(Errc::InvalidPattern, "attribute predicate lacks '~': " + text);
    rule.attribute = trim(predicate.substr(0, tilde));
    rule.attribute_pattern = trim(predicate.substr(tilde + 1));
    if (rule.attribute->empty()) throw Error(Errc::InvalidPattern, "empty attribute name: " + text);
  }
  rule.activity_pattern = trim(lhs);
  if (rule.new_label.empty()) throw Error(Errc::InvalidPattern, "empty target label: " + text);
  compile(rule.activity_pattern);
  compile(rule.attribute_pattern);
  return rule;
}

EventLog relabel_readings(const EventLog& log, std::span<const RelabelRule> rules) {
  struct Compiled {
    std::regex activity;
    std::optional<std::string> attribute;
    std::regex attribute_pattern;
    const std::string* label;
  };
  std::vector<Compiled> compiled;
  for (const auto& r : rules) {
    compiled.push_back({compile(r.activity_pattern), r.attribute, compile(r.attribute_pattern), &r.new_label});
  }
  EventLog out = log;
  if (compiled.empty()) return out;
  for (auto& trace : out.traces) {
    for (auto& ev : trace.events) {
      for (const auto& rule : compiled) {
        if (!std::regex_match(ev.activity, rule.activity)) continue;
        if (rule.attribute) {
          auto it = ev.attributes.find(*rule.attribute);
          if (it == ev.attributes.end()) continue;
          if (!std::regex_search(attribute_text(it->second), rule.attribute_pattern)) continue;
        }
        ev.activity = *rule.label;
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> distinct_activities(const EventLog& log) {
  std::set<std::string> names;
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) names.insert(e.activity);
  }
  return {names.begin(), names.end()};
}

}  // namespace parlmine
