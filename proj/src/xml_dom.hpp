#pragma once

// Minimal element tree on top of expat, shared by the export reader and the
// XES reader. Not part of the public interface.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "parlmine/error.hpp"

namespace parlmine::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::string text;  // character data directly inside this element
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  bool is_leaf() const { return children.empty(); }
};

// Parses a complete document. Honors the XML declaration's encoding
// (UTF-8, UTF-16, ISO-8859-1, US-ASCII natively; windows-1252 and
// ISO-8859-15 via a table) and defaults to UTF-8. Well-formedness errors
// are raised as `malformed` with the expat line/column.
Element parse(std::string_view bytes, Errc malformed);

// Concatenated character data of the element and all descendants.
std::string text_content(const Element& element);

std::string escape(std::string_view text);

}  // namespace parlmine::xml
