#pragma once

#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "lmfkit/resource.hpp"

namespace lmfkit::detail {

struct EtyEdge {
  const NodeInfo* to = nullptr;
  const EtyLink* link = nullptr;
};

// Directed entry -> etymon graph. Every (source, target) aspect pair of every
// link adds owner(target) -> owner(source) when owner(source) is an etymon.
struct EtyGraph {
  std::vector<const NodeInfo*> entries;  // document order
  std::map<const LexicalEntry*, const NodeInfo*> info;
  std::map<const LexicalEntry*, std::vector<EtyEdge>> out;
};

using Resolver = std::function<const NodeInfo*(std::string_view id)>;

// Entry owning the node `info` stands for.
const NodeInfo* owner_entry(const NodeInfo& info, const EtyGraph& graph);

EtyGraph build_ety_graph(std::span<const NodeInfo> nodes, const Resolver& resolve);

// Strongly connected components that form cycles (size > 1 or self-loop),
// each sorted by document order, the list sorted by first member.
std::vector<std::vector<const NodeInfo*>> ety_cycles(const EtyGraph& graph);

// True when `older` (the later link in order) is dated strictly after
// `newer`. Relative or missing dates never conflict.
bool dates_conflict(const EtyLink& newer, const EtyLink& older);

// W-ETY-DATE checks over the adjacent links of `ety`; recurses into
// sub-etymologies when `recursive`.
void temporal_pairs(const Etymology& ety, std::vector<Diagnostic>& out, bool recursive);

}  // namespace lmfkit::detail
