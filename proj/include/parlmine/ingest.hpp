#pragma once

// Reader for parliamentary documentation exports: an `Export` root holding
// `Vorgang` (procedure) elements, each with `Nebeneintrag` side entries and
// `Dokument` children. Properties may appear as XML attributes or as leaf
// child elements; both forms are normalized into the same fields.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parlmine::ingest {

struct RawDocument {
  std::optional<std::string> internal_id;
  std::optional<std::string> title;
  std::optional<std::string> date_text;
  std::optional<std::string> dok_typ_l;
  std::optional<std::string> dok_art_l;
  std::optional<std::string> url;
  std::vector<std::string> descriptors;
  std::vector<std::string> authors;
  std::vector<std::string> speakers;
  std::optional<std::string> abstract;
  // Every property not captured above, keyed by its attribute/element name.
  // Repeated properties are joined with "; ".
  std::map<std::string, std::string> extra_attributes;

  bool operator==(const RawDocument&) const = default;
};

struct RawProcess {
  std::optional<std::string> internal_id;
  std::optional<std::string> v_typ;
  std::optional<std::string> v_typ_l;
  std::optional<std::string> v_sys;
  std::optional<std::string> v_sys_l;
  std::vector<std::string> side_entries;
  std::vector<RawDocument> documents;
  // Leaf properties of the Vorgang that have no named field.
  std::map<std::string, std::string> extra_attributes;
  // Names of structured child elements that were neither Nebeneintrag nor
  // Dokument; their content is not interpreted (see scan_export).
  std::vector<std::string> skipped_elements;

  bool operator==(const RawProcess&) const = default;
};

struct RawExport {
  std::string source_name;
  std::vector<RawProcess> processes;

  bool operator==(const RawExport&) const = default;
};

// Throws Error{MalformedXml} or Error{WrongRootElement}.
RawExport parse_export(std::istream& xml_source, std::string source_name);
RawExport parse_export(std::string_view xml_bytes, std::string source_name);
RawExport parse_export_file(const std::filesystem::path& path, std::string source_name);

enum class WarningKind {
  MissingDate,
  MissingActivity,  // neither DokTypL nor DokArtL present
  EmptyProcess,
  SkippedElement,
};

std::string_view warning_kind_name(WarningKind kind);

struct IngestWarning {
  WarningKind kind;
  std::size_t process_index = 0;
  std::optional<std::size_t> document_index;
  std::string process_id;  // internal id when present, else empty
  std::string detail;
};

std::vector<IngestWarning> scan_export(const RawExport& raw);

// Number of warnings of `kind`.
std::size_t count_warnings(const std::vector<IngestWarning>& warnings, WarningKind kind);
// Number of distinct processes with at least one warning of `kind`.
std::size_t count_flagged_processes(const std::vector<IngestWarning>& warnings, WarningKind kind);

}  // namespace parlmine::ingest
