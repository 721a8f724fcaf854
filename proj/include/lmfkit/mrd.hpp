#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lmfkit/model.hpp"
#include "lmfkit/resource.hpp"

namespace lmfkit {

struct MweComponent {
  NodeId id;
  std::string surface;

  friend bool operator==(const MweComponent&, const MweComponent&) = default;
};

// Components of a multiword related entry in segment order. Throws
// QueryError(not_an_mwe) unless the entry is kind=related with segments, and
// LmfError(E-REF-DANGLING) when a segment target is not indexed.
std::vector<MweComponent> mwe_components(const LexicalResource& resource, const LexicalEntry& related);
std::vector<MweComponent> mwe_components(const LexicalResource& resource, std::string_view entry_id);

// Forms (nested ones included) whose stored class is exactly `cls`, in
// document order.
std::vector<const Form*> forms_by_class(const LexicalEntry& entry, FormClass cls);

struct InflectionRow {
  std::string orthography;
  std::vector<GrammaticalFeature> features;
  std::vector<Usage> usages;

  friend bool operator==(const InflectionRow&, const InflectionRow&) = default;
};

// One row per word-form class form (word_form or inflected); the lemma is
// never listed.
std::vector<InflectionRow> inflection_table(const LexicalEntry& entry);

}  // namespace lmfkit
