#pragma once

// IEEE 1849 (XES) serialization for the subset of attribute types the
// toolkit produces: string, date, float, boolean and list-of-string.
//
// The activity is stored under `concept:name`, the timestamp under
// `time:timestamp` as midnight UTC. Log provenance entries are stored as
// log-level strings keyed `provenance:<name>`.

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "parlmine/eventlog.hpp"

namespace parlmine::xes {

// Throws Error{SinkFailure} when the stream fails.
void write_xes(const EventLog& log, std::ostream& sink);
void write_xes_file(const EventLog& log, const std::filesystem::path& path);

// Throws Error{MalformedXes}. `int` attributes are read as numbers and `id`
// attributes as text.
EventLog read_xes(std::istream& source);
EventLog read_xes(std::string_view bytes);
EventLog read_xes_file(const std::filesystem::path& path);

}  // namespace parlmine::xes
