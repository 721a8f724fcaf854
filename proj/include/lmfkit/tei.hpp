#pragma once

// TEI dictionary serialization: document parsing into the object model,
// canonical serialization back out, and a model-independent canonicalizer.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/model.hpp"
#include "lmfkit/profile.hpp"
#include "lmfkit/resource.hpp"

namespace lmfkit {

// One parsed file. A bare <entry> document is a single-entry lexicon whose
// language comes from the entry; a <body> container holds entries, then
// crossrefs (<xr>), then bibliographies (<bibl>).
struct Document {
  enum class Shape { entry, body };

  Shape shape = Shape::body;
  Lexicon lexicon;
  std::vector<CrossRef> crossrefs;
  std::vector<Bibliography> bibliographies;

  friend bool operator==(const Document&, const Document&) = default;
};

struct ParseOptions {
  // Reported in diagnostic locations.
  std::string file;
  // A single document is open-world by default: references it does not
  // declare are I-REF-EXTERNAL rather than E-REF-DANGLING.
  bool closed_world = false;
  // Run model-level checks; corpus ingestion defers them to the merged
  // resource.
  bool model_checks = true;
};

template <class T>
struct ParseReport {
  // Present iff no diagnostic has error severity.
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;
  // Node path ("lexicon[0]/entry[0]/form[1]") and authored id -> location.
  SourceMap source_map;

  bool ok() const { return value.has_value(); }
};

ParseReport<Document> parse_document(std::string_view xml, const SerializationProfile& profile = default_profile(),
                                     const ParseOptions& options = {});

// Requires an <entry> document element.
ParseReport<LexicalEntry> parse_entry(std::string_view xml, const SerializationProfile& profile = default_profile(),
                                      const ParseOptions& options = {});

// Canonical bytes. Throws LmfError(E-UNSERIALIZABLE) when the model holds
// something the profile cannot express (an element or value outside it, or
// text that would not survive whitespace normalization).
std::string serialize_entry(const LexicalEntry& entry, const SerializationProfile& profile = default_profile());
std::string serialize_document(const Document& doc, const SerializationProfile& profile = default_profile());
// An <etym> fragment without namespace declaration.
std::string serialize_etymology(const Etymology& ety, const SerializationProfile& profile = default_profile());

// Canonical form computed on the XML tree alone (no object model involved).
// Fails with the XML and profile diagnostics of the input.
ParseReport<std::string> canonicalize(std::string_view xml, const SerializationProfile& profile = default_profile(),
                                      const ParseOptions& options = {});

// TEI tokens for model enums.
std::string_view tei_form_type(FormClass c);
std::optional<FormClass> form_class_from_tei(std::string_view token);
std::string_view tei_crossref_type(CrossRefType t);
std::optional<CrossRefType> crossref_type_from_tei(std::string_view token);

}  // namespace lmfkit
