#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace parlmine::io {

// Throws Error{Io}.
std::string read_file(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`, so readers never
// observe a partially written file. Throws Error{SinkFailure}.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace parlmine::io
