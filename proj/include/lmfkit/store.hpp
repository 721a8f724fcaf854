#pragma once

// Corpus store: multi-file ingestion into one resource, an NFC lemma index,
// JSON interchange, etymology rendering and statistics.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/profile.hpp"
#include "lmfkit/resource.hpp"

namespace lmfkit {

struct SourceFile {
  std::string path;
  std::string sha256;  // hex digest of the file bytes

  friend bool operator==(const SourceFile&, const SourceFile&) = default;
};

struct SourceText {
  std::string path;
  std::string text;
};

class Store {
 public:
  Store() = default;
  Store(LexicalResource resource, std::vector<SourceFile> files = {}, SourceMap source_map = {},
        ValidationReport report = {});

  const LexicalResource& resource() const { return resource_; }
  // NFC orthography of each lemma representation -> handles (id, else path)
  // of the standard entries carrying it, in document order.
  const std::map<std::string, std::vector<std::string>>& lemma_index() const { return lemma_index_; }
  const std::vector<SourceFile>& source_files() const { return files_; }
  const SourceMap& source_map() const { return source_map_; }
  // Diagnostics of the ingestion that produced the store (no errors).
  const ValidationReport& report() const { return report_; }

 private:
  LexicalResource resource_;
  std::map<std::string, std::vector<std::string>> lemma_index_;
  std::vector<SourceFile> files_;
  SourceMap source_map_;
  ValidationReport report_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& path) : std::runtime_error("cannot read " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct IngestResult {
  // Present iff the merged report has no errors.
  std::optional<Store> store;
  ValidationReport report;
};

// Parses every file (concurrently), merges them in path order, one lexicon
// per file, and validates the merged resource in a closed world. Throws
// IoError for unreadable paths.
IngestResult ingest(std::vector<std::string> paths, const SerializationProfile& profile = default_profile());
IngestResult ingest_texts(std::vector<SourceText> sources, const SerializationProfile& profile = default_profile());

// NFC normalization (no case folding).
std::string nfc(std::string_view s);

struct EntrySummary {
  std::optional<NodeId> id;
  std::string handle;
  std::string language;  // entry xml:lang, else its lexicon language
  std::string lemma;
  std::size_t sense_count = 0;

  friend bool operator==(const EntrySummary&, const EntrySummary&) = default;
};

// Exact, case-sensitive match on lemma orthographies (both sides NFC).
std::vector<EntrySummary> lookup(const Store& store, std::string_view headword);

// Deterministic JSON rendering ("format": "lmfkit-json/1", sorted keys).
// Throws LmfError(E-EXPORT-INVALID) when the store report has errors.
std::string export_json(const Store& store);
// Rebuilds the resource; throws std::invalid_argument on malformed input and
// LmfError when the model does not validate.
Store import_json(std::string_view json);

// "center ←(borrowing)← centre [fr] ←(inheritance)← ..." for the first entry
// with that headword that has an etymology. Throws QueryError.
std::string etym_trace(const Store& store, std::string_view headword);

struct StatsReport {
  std::map<std::string, std::size_t> entries_by_kind;
  std::map<std::string, std::size_t> forms_by_class;
  std::size_t senses = 0;
  std::size_t mwes = 0;
  std::size_t etymologies = 0;
  std::map<std::string, std::size_t> links_by_type;
  std::map<std::string, std::size_t> diagnostics_by_severity;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

StatsReport stats(const Store& store);
std::string render_text(const StatsReport& s);
std::string render_json(const StatsReport& s);

}  // namespace lmfkit
