#include "parlmine/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "parlmine/error.hpp"
#include "xml_dom.hpp"

namespace parlmine::ingest {

namespace {

using xml::Element;

bool is_one_of(std::string_view name, std::initializer_list<std::string_view> names) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto end = value.find(';', start);
    auto item = trimmed(value.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

void set_scalar(std::optional<std::string>& field, std::string value) {
  if (value.empty() || field) return;
  field = std::move(value);
}

void add_extra(std::map<std::string, std::string>& extra, const std::string& key, std::string value) {
  auto [it, inserted] = extra.try_emplace(key, value);
  if (!inserted) it->second += "; " + value;
}

// `from_attribute` distinguishes the attribute form, where list values are
// ';'-separated, from the child-element form, where each element is one item.
void assign_document_property(RawDocument& doc, const std::string& key, const std::string& raw_value,
                              bool from_attribute) {
  std::string value = trimmed(raw_value);
  auto add_list = [&](std::vector<std::string>& list) {
    if (from_attribute) {
      auto items = split_list(value);
      list.insert(list.end(), std::make_move_iterator(items.begin()), std::make_move_iterator(items.end()));
    } else if (!value.empty()) {
      list.push_back(std::move(value));
    }
  };
  if (is_one_of(key, {"ID", "Id", "id", "DokId"})) {
    set_scalar(doc.internal_id, std::move(value));
  } else if (is_one_of(key, {"Titel", "Title"})) {
    set_scalar(doc.title, std::move(value));
  } else if (key == "DokDat") {
    set_scalar(doc.date_text, std::move(value));
  } else if (key == "DokTypL") {
    set_scalar(doc.dok_typ_l, std::move(value));
  } else if (key == "DokArtL") {
    set_scalar(doc.dok_art_l, std::move(value));
  } else if (is_one_of(key, {"LokURL", "URL", "Url"})) {
    set_scalar(doc.url, std::move(value));
  } else if (is_one_of(key, {"Desk", "Deskriptor"})) {
    add_list(doc.descriptors);
  } else if (is_one_of(key, {"Urheber", "Autor"})) {
    add_list(doc.authors);
  } else if (key == "Redner") {
    add_list(doc.speakers);
  } else if (is_one_of(key, {"Abstract", "Abstrakt"})) {
    set_scalar(doc.abstract, std::move(value));
  } else if (!value.empty()) {
    add_extra(doc.extra_attributes, key, std::move(value));
  }
}

bool is_list_property(std::string_view key) {
  return is_one_of(key, {"Desk", "Deskriptor", "Urheber", "Autor", "Redner"});
}

void read_document_children(RawDocument& doc, const Element& element) {
  for (const auto& child : element.children) {
    if (child.is_leaf() || is_list_property(child.name)) {
      assign_document_property(doc, child.name, xml::text_content(child), false);
    } else {
      // Wrapper element such as <Deskriptoren><Desk>..</Desk></Deskriptoren>.
      for (const auto& [k, v] : child.attributes) assign_document_property(doc, k, v, true);
      read_document_children(doc, child);
    }
  }
}

RawDocument read_document(const Element& element) {
  RawDocument doc;
  for (const auto& [k, v] : element.attributes) assign_document_property(doc, k, v, true);
  read_document_children(doc, element);
  return doc;
}

std::string side_entry_text(const Element& element) {
  if (const auto* desk = element.attribute("Desk")) return trimmed(*desk);
  std::vector<std::string> parts;
  for (const auto& child : element.children) {
    if (child.name == "Desk") parts.push_back(trimmed(xml::text_content(child)));
  }
  if (parts.empty()) return trimmed(xml::text_content(element));
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

void assign_process_property(RawProcess& proc, const std::string& key, const std::string& raw_value) {
  std::string value = trimmed(raw_value);
  if (is_one_of(key, {"VNr", "VId", "ID", "Id", "id"})) {
    set_scalar(proc.internal_id, std::move(value));
  } else if (key == "VTyp") {
    set_scalar(proc.v_typ, std::move(value));
  } else if (key == "VTypL") {
    set_scalar(proc.v_typ_l, std::move(value));
  } else if (key == "VSys") {
    set_scalar(proc.v_sys, std::move(value));
  } else if (key == "VSysL") {
    set_scalar(proc.v_sys_l, std::move(value));
  } else if (!value.empty()) {
    add_extra(proc.extra_attributes, key, std::move(value));
  }
}

RawProcess read_process(const Element& element) {
  RawProcess proc;
  for (const auto& [k, v] : element.attributes) assign_process_property(proc, k, v);
  for (const auto& child : element.children) {
    if (child.name == "Dokument") {
      proc.documents.push_back(read_document(child));
    } else if (child.name == "Nebeneintrag") {
      auto text = side_entry_text(child);
      if (!text.empty()) proc.side_entries.push_back(std::move(text));
    } else if (child.is_leaf()) {
      assign_process_property(proc, child.name, child.text);
    } else {
      proc.skipped_elements.push_back(child.name);
    }
  }
  return proc;
}

}  // namespace

RawExport parse_export(std::string_view xml_bytes, std::string source_name) {
  const Element root = xml::parse(xml_bytes, Errc::MalformedXml);
  if (root.name != "Export") {
    throw Error(Errc::WrongRootElement, "root element is <" + root.name + ">, expected <Export>",
                SourcePosition{root.line, root.column, 0});
  }
  RawExport out;
  out.source_name = std::move(source_name);
  for (const auto& child : root.children) {
    if (child.name == "Vorgang") out.processes.push_back(read_process(child));
  }
  return out;
}

RawExport parse_export(std::istream& xml_source, std::string source_name) {
  std::string bytes{std::istreambuf_iterator<char>(xml_source), std::istreambuf_iterator<char>()};
  if (xml_source.bad()) throw Error(Errc::Io, "read failure on export stream");
  return parse_export(std::string_view(bytes), std::move(source_name));
}

RawExport parse_export_file(const std::filesystem::path& path, std::string source_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  try {
    return parse_export(in, std::move(source_name));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message(), e.where());
  }
}

std::string_view warning_kind_name(WarningKind kind) {
  switch (kind) {
    case WarningKind::MissingDate: return "missing_date";
    case WarningKind::MissingActivity: return "missing_activity";
    case WarningKind::EmptyProcess: return "empty_process";
    case WarningKind::SkippedElement: return "skipped_element";
  }
  return "unknown";
}

std::vector<IngestWarning> scan_export(const RawExport& raw) {
  std::vector<IngestWarning> out;
  for (std::size_t p = 0; p < raw.processes.size(); ++p) {
    const auto& proc = raw.processes[p];
    const std::string pid = proc.internal_id.value_or("");
    if (proc.documents.empty()) out.push_back({WarningKind::EmptyProcess, p, std::nullopt, pid, "no Dokument elements"});
    for (const auto& name : proc.skipped_elements) {
      out.push_back({WarningKind::SkippedElement, p, std::nullopt, pid, "skipped element <" + name + ">"});
    }
    for (std::size_t d = 0; d < proc.documents.size(); ++d) {
      const auto& doc = proc.documents[d];
      if (!doc.date_text) out.push_back({WarningKind::MissingDate, p, d, pid, "document without DokDat"});
      if (!doc.dok_typ_l && !doc.dok_art_l) {
        out.push_back({WarningKind::MissingActivity, p, d, pid, "document without DokTypL and DokArtL"});
      }
    }
  }
  return out;
}

std::size_t count_warnings(const std::vector<IngestWarning>& warnings, WarningKind kind) {
  return static_cast<std::size_t>(
      std::count_if(warnings.begin(), warnings.end(), [kind](const auto& w) { return w.kind == kind; }));
}

std::size_t count_flagged_processes(const std::vector<IngestWarning>& warnings, WarningKind kind) {
  std::set<std::size_t> processes;
  for (const auto& w : warnings) {
    if (w.kind == kind) processes.insert(w.process_index);
  }
  return processes.size();
}

}  // namespace parlmine::ingest
