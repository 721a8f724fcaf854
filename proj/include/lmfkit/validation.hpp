#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/resource.hpp"

namespace lmfkit {

struct CheckOptions {
  // Closed world: unresolved references are E-REF-DANGLING. Open world
  // (single-document parses) downgrades them to I-REF-EXTERNAL.
  bool closed_world = true;
  // Source positions used to locate diagnostics; may be null.
  const SourceMap* source_map = nullptr;
};

// Model-level checks over raw parts: id syntax and uniqueness, references,
// lemma cardinality, form/sense structure, segment and link ordering, dates,
// etymology cycles, crossref rules. Diagnostics are in document order.
std::vector<Diagnostic> check_model(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                                    std::span<const Bibliography> bibliographies, const CheckOptions& options = {});

// Deterministic report over a built resource; never throws.
ValidationReport validate_resource(const LexicalResource& resource, const SourceMap* source_map = nullptr);

}  // namespace lmfkit
