#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/resource.hpp"

namespace lmfkit {

struct ChainStep {
  std::string link_type;
  const LexicalEntry* etymon = nullptr;
  const EtyLink* link = nullptr;
};

// Ancestry of an entry, most recent ancestor first. Each step follows the
// first link (document order) whose target aspect belongs to the current
// entry and whose source aspect belongs to an etymon-kind entry. Links are
// drawn from every etymology in the resource, so an etymon's own etymology
// extends the chain.
// Throws QueryError: no_etymology when the entry has none, cyclic_etymology
// when the walk revisits an entry, not_found for an unknown id.
std::vector<ChainStep> ety_chain(const LexicalResource& resource, const LexicalEntry& entry);
std::vector<ChainStep> ety_chain(const LexicalResource& resource, std::string_view entry_id);

// Cognate-kind entries named by any link aspect in the etymologies of the
// entry and of its chain ancestors; deduplicated, document order.
std::vector<const LexicalEntry*> cognates_of(const LexicalResource& resource, const LexicalEntry& entry);
std::vector<const LexicalEntry*> cognates_of(const LexicalResource& resource, std::string_view entry_id);

// W-ETY-DATE for each adjacent link pair (per etymology, recursively) whose
// numeric dates get more recent while link order walks into the past.
// Relative dates are never compared.
std::vector<Diagnostic> check_temporal_consistency(const Etymology& ety);

// One E-ETY-CYCLE per strongly connected component of size > 1 (or
// self-loop) in the entry -> etymon graph, ordered by first member.
std::vector<Diagnostic> check_acyclic(const LexicalResource& resource);

}  // namespace lmfkit
