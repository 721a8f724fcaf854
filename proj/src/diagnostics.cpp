#include "lmfkit/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace lmfkit {

namespace {

using S = Severity;

constexpr std::array kRegistry = {
    RegistryEntry{"E-DATE-INVALID", S::error, "date kind disagrees with its year fields, or the date text is empty"},
    RegistryEntry{"E-DATE-RANGE", S::error, "date range starts after it ends"},
    RegistryEntry{"E-ENTRY-KIND", S::error, "related entries must be nested under a host; nested entries must be related"},
    RegistryEntry{"E-ETY-CYCLE", S::error, "the entry-to-etymon graph contains a cycle"},
    RegistryEntry{"E-ETY-EMPTY", S::error, "etymology has neither links nor sub-etymologies"},
    RegistryEntry{"E-ETY-LANG", S::error, "etymon or cognate entry carries no language"},
    RegistryEntry{"E-EXPORT-INVALID", S::error, "export refused: the store has error diagnostics"},
    RegistryEntry{"E-FORM-EMPTY", S::error, "form has no representation"},
    RegistryEntry{"E-FORM-NESTING", S::error, "nested forms are only allowed under the lemma form"},
    RegistryEntry{"E-FORM-PRON", S::error, "pronunciation is not paired with a preceding orthography"},
    RegistryEntry{"E-FORM-UNTYPED", S::error, "form without a type outside a multiword expression"},
    RegistryEntry{"E-ID-DUP", S::error, "node id declared more than once"},
    RegistryEntry{"E-ID-SYNTAX", S::error, "node id is not an XML NCName"},
    RegistryEntry{"E-LANG-EMPTY", S::error, "lexicon language tag is empty"},
    RegistryEntry{"E-LAYOUT", S::error, "recorded child layout disagrees with the node content"},
    RegistryEntry{"E-LEMMA-DUP", S::error, "entry has more than one lemma form"},
    RegistryEntry{"E-LEMMA-MISSING", S::error, "entry has no lemma form"},
    RegistryEntry{"E-LINK-EMPTY", S::error, "etymological link lacks a type, a source or a target"},
    RegistryEntry{"E-LINK-ORDER", S::error, "etymological link order is not 1..n in authored order"},
    RegistryEntry{"E-MWE-SURFACE", S::error, "multiword surface differs from its joined segments"},
    RegistryEntry{"E-PROFILE-ATTR", S::error, "attribute not allowed on this element"},
    RegistryEntry{"E-PROFILE-CARD", S::error, "child element count outside the allowed cardinality"},
    RegistryEntry{"E-PROFILE-ELEMENT", S::error, "element not allowed by the profile here"},
    RegistryEntry{"E-PROFILE-NS", S::error, "namespace other than the profile namespace"},
    RegistryEntry{"E-PROFILE-ORDER", S::error, "child elements out of the profile order"},
    RegistryEntry{"E-PROFILE-REQUIRED", S::error, "required attribute missing"},
    RegistryEntry{"E-PROFILE-ROOT", S::error, "document element not permitted as a root"},
    RegistryEntry{"E-PROFILE-TEXT", S::error, "text content where the profile allows none"},
    RegistryEntry{"E-PROFILE-VALUE", S::error, "attribute value outside the allowed vocabulary or syntax"},
    RegistryEntry{"E-REF-DANGLING", S::error, "reference to an undeclared node id"},
    RegistryEntry{"E-REF-KIND", S::error, "reference resolves to a node of the wrong kind"},
    RegistryEntry{"E-SEG-ORDER", S::error, "multiword segment numbers are not exactly 1..k"},
    RegistryEntry{"E-SENSE-EMPTY", S::error, "sense has no definition, gloss, example or subsense"},
    RegistryEntry{"E-TEXT-EMPTY", S::error, "required text is empty"},
    RegistryEntry{"E-UNSERIALIZABLE", S::error, "model feature has no profile mapping"},
    RegistryEntry{"E-XML-ENCODING", S::error, "document encoding is not UTF-8"},
    RegistryEntry{"E-XML-MALFORMED", S::error, "document is not well-formed XML"},
    RegistryEntry{"E-XREF-ORDER", S::error, "cross-reference target order is not exactly 1..k"},
    RegistryEntry{"E-XREF-SELF", S::error, "relation points from a node to itself"},
    RegistryEntry{"I-RE-SENSE", S::info, "related entry carries senses"},
    RegistryEntry{"I-REF-EXTERNAL", S::info, "reference not declared in this document; resolved at resource level"},
    RegistryEntry{"I-XREF-LEXICON", S::info, "cross-reference spans lexicons"},
    RegistryEntry{"W-ETY-DATE", S::warning, "link dates run against link order"},
    RegistryEntry{"W-ETY-DISPLAY", S::warning, "link display form differs from the source etymon lemma"},
    RegistryEntry{"W-NO-LANG", S::warning, "lexicon container declares no language; using und"},
    RegistryEntry{"W-NO-SENSE", S::warning, "entry has no sense"},
};

}  // namespace

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::error: return "ERROR";
    case Severity::warning: return "WARNING";
    case Severity::info: return "INFO";
  }
  return "?";
}

std::span<const RegistryEntry> registry() { return kRegistry; }

const RegistryEntry& registry_entry(std::string_view code) {
  auto it = std::lower_bound(kRegistry.begin(), kRegistry.end(), code,
                             [](const RegistryEntry& e, std::string_view c) { return e.code < c; });
  if (it == kRegistry.end() || it->code != code) {
    throw std::out_of_range("unregistered diagnostic code " + std::string(code));
  }
  return *it;
}

Diagnostic make_diagnostic(std::string_view code, std::string message,
                           std::optional<std::string> node,
                           std::optional<SourceLocation> location) {
  const auto& e = registry_entry(code);
  return Diagnostic{std::string(e.code), e.severity, std::move(node), std::move(location),
                    std::move(message)};
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

ValidationReport::ValidationReport(std::vector<Diagnostic> ds) : diagnostics(std::move(ds)) {
  for (const auto& d : diagnostics) {
    switch (d.severity) {
      case Severity::error: ++errors; break;
      case Severity::warning: ++warnings; break;
      case Severity::info: ++infos; break;
    }
  }
}

void sort_diagnostics(std::vector<Diagnostic>& ds, std::span<const std::string> file_order) {
  auto rank = [&](const std::string& file) {
    auto it = std::find(file_order.begin(), file_order.end(), file);
    return static_cast<std::size_t>(it - file_order.begin());
  };
  std::stable_sort(ds.begin(), ds.end(), [&](const Diagnostic& a, const Diagnostic& b) {
    if (!a.location || !b.location) return a.location.has_value() && !b.location.has_value();
    const auto& la = *a.location;
    const auto& lb = *b.location;
    return std::make_tuple(rank(la.file), la.file, la.line, la.column, a.code) <
           std::make_tuple(rank(lb.file), lb.file, lb.line, lb.column, b.code);
  });
}

std::string render_text(const Diagnostic& d) {
  std::ostringstream out;
  out << to_string(d.severity) << ' ' << d.code << ' ';
  if (d.location) {
    out << (d.location->file.empty() ? "<input>" : d.location->file) << ':' << d.location->line
        << ':' << d.location->column;
  } else {
    out << '-';
  }
  out << ' ' << d.node.value_or("-") << ' ' << d.message;
  return out.str();
}

std::string render_text(const ValidationReport& r) {
  std::string out;
  for (const auto& d : r.diagnostics) {
    out += render_text(d);
    out += '\n';
  }
  return out;
}

std::string render_json(const ValidationReport& r) {
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::json j;
    j["code"] = d.code;
    j["severity"] = std::string(to_string(d.severity));
    j["node"] = d.node ? nlohmann::json(*d.node) : nlohmann::json(nullptr);
    if (d.location) {
      j["location"] = {{"file", d.location->file},
                       {"line", d.location->line},
                       {"column", d.location->column}};
    } else {
      j["location"] = nullptr;
    }
    j["message"] = d.message;
    ds.push_back(std::move(j));
  }
  nlohmann::json root;
  root["diagnostics"] = std::move(ds);
  root["counts"] = {{"error", r.errors}, {"warning", r.warnings}, {"info", r.infos}};
  return root.dump(2) + "\n";
}

LmfError::LmfError(Diagnostic d)
    : std::runtime_error(d.code + ": " + d.message), diagnostic_(std::move(d)) {}

}  // namespace lmfkit
