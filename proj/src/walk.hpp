#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "lmfkit/resource.hpp"

namespace lmfkit::detail {

// Pre-order traversal of every node: entries (with forms, senses, related
// entries, etymology) per lexicon, then crossrefs, then bibliographies.
void walk_nodes(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                std::span<const Bibliography> bibliographies, const std::function<void(const NodeInfo&)>& visit);

std::vector<NodeInfo> collect_nodes(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                                    std::span<const Bibliography> bibliographies);

// Authored id of a node, if any.
const NodeId* node_id(const NodeRef& node);

struct DuplicateId {
  NodeId id;
  const NodeInfo* first;
  const NodeInfo* second;
};

struct IdTable {
  std::map<NodeId, const NodeInfo*> ids;
  std::vector<DuplicateId> duplicates;
};

// First declaration wins; later ones are reported as duplicates.
IdTable index_ids(const std::vector<NodeInfo>& nodes);

// Diagnostic node label: the node's id, else its path.
std::string node_label(const NodeInfo& info);

}  // namespace lmfkit::detail
