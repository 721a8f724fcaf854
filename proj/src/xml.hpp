#pragma once

// Minimal expat-backed element tree. Comments and processing instructions are
// dropped; character data is kept per element (mixed content is reported by
// the profile checker, not here).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmfkit/diagnostics.hpp"

namespace lmfkit::xml {

struct Attribute {
  std::string name;
  std::string value;
};

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Element> children;
  // Concatenated direct character data.
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string* attr(std::string_view name) const;
};

struct ParseResult {
  std::optional<Element> root;
  std::vector<Diagnostic> diagnostics;
};

// Columns count code points from 1. Non-UTF-8 input or a declared encoding
// other than UTF-8 is E-XML-ENCODING; anything else expat rejects is
// E-XML-MALFORMED.
ParseResult parse(std::string_view bytes, const std::string& file);

}  // namespace lmfkit::xml
