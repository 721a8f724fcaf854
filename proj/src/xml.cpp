#include "xml.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>

#include "utf8.hpp"

namespace lmfkit::xml {

const std::string* Element::attr(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

namespace {

class LineTable {
 public:
  explicit LineTable(std::string_view text) : text_(text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') starts_.push_back(i + 1);
    }
  }

  SourceLocation at(std::size_t offset, const std::string& file) const {
    offset = std::min(offset, text_.size());
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - starts_.begin());
    std::size_t start = starts_[line - 1];
    std::size_t col = 1;
    for (std::size_t i = start; i < offset; ++i) {
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
    }
    return SourceLocation{file, line, col};
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> starts_;
};

struct Builder {
  const LineTable* lines = nullptr;
  const std::string* file = nullptr;
  XML_Parser parser = nullptr;
  std::vector<Element> stack;
  std::optional<Element> root;
  std::optional<Diagnostic> encoding_error;

  static void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* b = static_cast<Builder*>(data);
    Element e;
    e.name = name;
    for (std::size_t i = 0; atts[i]; i += 2) e.attributes.push_back(Attribute{atts[i], atts[i + 1]});
    auto loc = b->lines->at(static_cast<std::size_t>(XML_GetCurrentByteIndex(b->parser)), *b->file);
    e.line = loc.line;
    e.column = loc.column;
    b->stack.push_back(std::move(e));
  }

  static void on_end(void* data, const XML_Char*) {
    auto* b = static_cast<Builder*>(data);
    Element e = std::move(b->stack.back());
    b->stack.pop_back();
    if (b->stack.empty()) {
      b->root = std::move(e);
    } else {
      b->stack.back().children.push_back(std::move(e));
    }
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* b = static_cast<Builder*>(data);
    if (!b->stack.empty()) b->stack.back().text.append(s, static_cast<std::size_t>(len));
  }

  static void on_decl(void* data, const XML_Char*, const XML_Char* encoding, int) {
    auto* b = static_cast<Builder*>(data);
    if (!encoding) return;
    std::string enc(encoding);
    std::transform(enc.begin(), enc.end(), enc.begin(), [](unsigned char c) { return std::tolower(c); });
    if (enc == "utf-8" || enc == "utf8") return;
    b->encoding_error = make_diagnostic("E-XML-ENCODING", "declared encoding " + std::string(encoding) +
                                                              " is not UTF-8",
                                        std::nullopt, b->lines->at(0, *b->file));
    XML_StopParser(b->parser, XML_FALSE);
  }
};

}  // namespace

ParseResult parse(std::string_view bytes, const std::string& file) {
  ParseResult out;
  LineTable lines(bytes);
  auto starts_with = [&](std::string_view p) { return bytes.substr(0, p.size()) == p; };
  if (starts_with("\xFE\xFF") || starts_with("\xFF\xFE")) {
    out.diagnostics.push_back(
        make_diagnostic("E-XML-ENCODING", "UTF-16 byte order mark; only UTF-8 is accepted", std::nullopt,
                        SourceLocation{file, 1, 1}));
    return out;
  }
  if (!utf8::decode(bytes)) {
    // Locate the first undecodable byte for the report.
    std::size_t good = 0;
    while (good < bytes.size()) {
      std::size_t len = 1;
      while (len <= 4 && !utf8::decode(bytes.substr(good, len))) ++len;
      if (len > 4) break;
      good += len;
    }
    out.diagnostics.push_back(make_diagnostic("E-XML-ENCODING", "input is not valid UTF-8", std::nullopt,
                                              lines.at(good, file)));
    return out;
  }

  Builder b;
  b.lines = &lines;
  b.file = &file;
  XML_Parser p = XML_ParserCreate("UTF-8");
  b.parser = p;
  XML_SetUserData(p, &b);
  XML_SetElementHandler(p, &Builder::on_start, &Builder::on_end);
  XML_SetCharacterDataHandler(p, &Builder::on_text);
  XML_SetXmlDeclHandler(p, &Builder::on_decl);
  const auto status = XML_Parse(p, bytes.data(), static_cast<int>(bytes.size()), XML_TRUE);
  if (b.encoding_error) {
    out.diagnostics.push_back(*b.encoding_error);
  } else if (status != XML_STATUS_OK) {
    auto line = static_cast<std::size_t>(XML_GetCurrentLineNumber(p));
    auto offset = static_cast<std::size_t>(std::max<XML_Index>(0, XML_GetCurrentByteIndex(p)));
    SourceLocation loc = offset > 0 || line == 1 ? lines.at(offset, file) : SourceLocation{file, line, 1};
    out.diagnostics.push_back(make_diagnostic("E-XML-MALFORMED", XML_ErrorString(XML_GetErrorCode(p)),
                                              std::nullopt, loc));
  } else {
    out.root = std::move(b.root);
  }
  XML_ParserFree(p);
  return out;
}

}  // namespace lmfkit::xml
