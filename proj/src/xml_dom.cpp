#include "xml_dom.hpp"

#include <array>
#include <cstring>
#include <memory>
#include <strings.h>

#include <expat.h>

namespace parlmine::xml {

namespace {

constexpr std::array<int, 32> kCp1252High = {
    0x20AC, -1,     0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, -1,     0x017D, -1,     -1,     0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, -1,     0x017E, 0x0178,
};

int XMLCALL unknown_encoding(void* /*data*/, const XML_Char* name, XML_Encoding* info) {
  const bool cp1252 = strcasecmp(name, "windows-1252") == 0 || strcasecmp(name, "cp1252") == 0;
  const bool latin9 = strcasecmp(name, "iso-8859-15") == 0 || strcasecmp(name, "latin-9") == 0;
  if (!cp1252 && !latin9) return XML_STATUS_ERROR;
  for (int i = 0; i < 256; ++i) info->map[i] = i;
  if (cp1252) {
    for (int i = 0; i < 32; ++i) info->map[0x80 + i] = kCp1252High[static_cast<std::size_t>(i)];
  } else {
    info->map[0xA4] = 0x20AC;
    info->map[0xA6] = 0x0160;
    info->map[0xA8] = 0x0161;
    info->map[0xB4] = 0x017D;
    info->map[0xB8] = 0x017E;
    info->map[0xBC] = 0x0152;
    info->map[0xBD] = 0x0153;
    info->map[0xBE] = 0x0178;
  }
  info->data = nullptr;
  info->convert = nullptr;
  info->release = nullptr;
  return XML_STATUS_OK;
}

struct Builder {
  XML_Parser parser = nullptr;
  Element root;
  bool has_root = false;
  std::vector<Element*> stack;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<Builder*>(data);
  Element* node = nullptr;
  if (b->stack.empty()) {
    b->has_root = true;
    node = &b->root;
  } else {
    node = &b->stack.back()->children.emplace_back();
  }
  node->name = name;
  node->line = XML_GetCurrentLineNumber(b->parser);
  node->column = XML_GetCurrentColumnNumber(b->parser) + 1;
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    node->attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  b->stack.push_back(node);
}

void XMLCALL on_end(void* data, const XML_Char* /*name*/) {
  auto* b = static_cast<Builder*>(data);
  b->stack.pop_back();
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto* b = static_cast<Builder*>(data);
  if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

void append_text(const Element& e, std::string& out) {
  out += e.text;
  for (const auto& child : e.children) append_text(child, out);
}

}  // namespace

Element parse(std::string_view bytes, Errc malformed) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate(nullptr));
  if (!parser) throw Error(Errc::Io, "cannot allocate XML parser");
  Builder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetUnknownEncodingHandler(parser.get(), unknown_encoding, nullptr);

  // Feed in chunks so inputs beyond INT_MAX bytes are handled.
  constexpr std::size_t kChunk = 1 << 24;
  std::size_t offset = 0;
  do {
    const std::size_t n = std::min(kChunk, bytes.size() - offset);
    const bool last = offset + n == bytes.size();
    if (XML_Parse(parser.get(), bytes.data() + offset, static_cast<int>(n), last ? 1 : 0) == XML_STATUS_ERROR) {
      SourcePosition where{static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get())),
                           static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser.get())) + 1,
                           static_cast<std::size_t>(XML_GetCurrentByteIndex(parser.get()))};
      throw Error(malformed, XML_ErrorString(XML_GetErrorCode(parser.get())), where);
    }
    offset += n;
  } while (offset < bytes.size());
  if (!builder.has_root) throw Error(malformed, "document has no root element");
  return std::move(builder.root);
}

std::string text_content(const Element& element) {
  std::string out;
  append_text(element, out);
  return out;
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default:
        // Other C0 controls cannot appear in XML 1.0 at all.
        if (static_cast<unsigned char>(c) >= 0x20) out += c;
    }
  }
  return out;
}

}  // namespace parlmine::xml
