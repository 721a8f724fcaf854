#include "lmfkit/etymology.hpp"

#include <algorithm>
#include <set>

#include "ety_graph.hpp"
#include "walk.hpp"

namespace lmfkit {

namespace detail {

const NodeInfo* owner_entry(const NodeInfo& info, const EtyGraph& graph) {
  if (!info.entry) return nullptr;
  auto it = graph.info.find(info.entry);
  return it == graph.info.end() ? nullptr : it->second;
}

EtyGraph build_ety_graph(std::span<const NodeInfo> nodes, const Resolver& resolve) {
  EtyGraph g;
  for (const auto& n : nodes) {
    if (auto* e = std::get_if<const LexicalEntry*>(&n.node)) {
      g.entries.push_back(&n);
      g.info.emplace(*e, &n);
      g.out[*e];
    }
  }
  for (const auto& n : nodes) {
    auto* link = std::get_if<const EtyLink*>(&n.node);
    if (!link) continue;
    for (const auto& t : (*link)->target_aspects) {
      const NodeInfo* target = resolve(t);
      const NodeInfo* from = target ? owner_entry(*target, g) : nullptr;
      if (!from) continue;
      for (const auto& s : (*link)->source_aspects) {
        const NodeInfo* source = resolve(s);
        const NodeInfo* to = source ? owner_entry(*source, g) : nullptr;
        if (!to || to->entry->kind != EntryKind::etymon) continue;
        g.out[from->entry].push_back(EtyEdge{to, *link});
      }
    }
  }
  return g;
}

std::vector<std::vector<const NodeInfo*>> ety_cycles(const EtyGraph& g) {
  // Iterative Tarjan.
  struct State {
    std::size_t index = 0;
    std::size_t low = 0;
    bool on_stack = false;
    bool visited = false;
  };
  std::map<const LexicalEntry*, State> st;
  std::vector<const LexicalEntry*> stack;
  std::vector<std::vector<const NodeInfo*>> out;
  std::size_t counter = 0;

  struct Frame {
    const LexicalEntry* v;
    std::size_t next_edge;
  };

  for (const NodeInfo* root : g.entries) {
    if (st[root->entry].visited) continue;
    std::vector<Frame> calls{{root->entry, 0}};
    auto open = [&](const LexicalEntry* v) {
      auto& s = st[v];
      s.visited = true;
      s.index = s.low = counter++;
      s.on_stack = true;
      stack.push_back(v);
    };
    open(root->entry);
    while (!calls.empty()) {
      auto& frame = calls.back();
      const auto& edges = g.out.at(frame.v);
      if (frame.next_edge < edges.size()) {
        const LexicalEntry* w = edges[frame.next_edge++].to->entry;
        auto& ws = st[w];
        if (!ws.visited) {
          open(w);
          calls.push_back({w, 0});
        } else if (ws.on_stack) {
          st[frame.v].low = std::min(st[frame.v].low, ws.index);
        }
        continue;
      }
      const LexicalEntry* v = frame.v;
      calls.pop_back();
      if (!calls.empty()) st[calls.back().v].low = std::min(st[calls.back().v].low, st[v].low);
      if (st[v].low != st[v].index) continue;
      std::vector<const NodeInfo*> component;
      const LexicalEntry* w = nullptr;
      do {
        w = stack.back();
        stack.pop_back();
        st[w].on_stack = false;
        component.push_back(g.info.at(w));
      } while (w != v);
      bool self_loop = false;
      if (component.size() == 1) {
        const auto& edges_v = g.out.at(v);
        self_loop = std::any_of(edges_v.begin(), edges_v.end(), [&](const EtyEdge& e) { return e.to->entry == v; });
      }
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end(),
                  [](const NodeInfo* a, const NodeInfo* b) { return a->seq < b->seq; });
        out.push_back(std::move(component));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front()->seq < b.front()->seq; });
  return out;
}

}  // namespace detail

namespace {

detail::EtyGraph graph_of(const LexicalResource& resource) {
  return detail::build_ety_graph(resource.nodes(), [&](std::string_view id) { return resource.find(id); });
}

const LexicalEntry& entry_by_id(const LexicalResource& resource, std::string_view id) {
  const NodeInfo* info = resource.find(id);
  auto* e = info ? std::get_if<const LexicalEntry*>(&info->node) : nullptr;
  if (!e) throw QueryError(QueryError::Kind::not_found, std::string(id));
  return **e;
}

std::string label_of(const detail::EtyGraph& g, const LexicalEntry& e) {
  auto it = g.info.find(&e);
  return it == g.info.end() ? e.id.value_or("?") : detail::node_label(*it->second);
}

std::vector<ChainStep> chain(const detail::EtyGraph& g, const LexicalEntry& entry) {
  if (!entry.etymology) throw QueryError(QueryError::Kind::no_etymology, label_of(g, entry));
  std::vector<ChainStep> out;
  std::vector<const LexicalEntry*> seen{&entry};
  const LexicalEntry* current = &entry;
  for (;;) {
    auto it = g.out.find(current);
    if (it == g.out.end() || it->second.empty()) break;
    const auto& edge = it->second.front();
    const LexicalEntry* next = edge.to->entry;
    if (std::find(seen.begin(), seen.end(), next) != seen.end()) {
      std::vector<std::string> cycle;
      auto from = std::find(seen.begin(), seen.end(), next);
      for (auto p = from; p != seen.end(); ++p) cycle.push_back(label_of(g, **p));
      cycle.push_back(label_of(g, *next));
      throw QueryError(QueryError::Kind::cyclic_etymology, label_of(g, entry), std::move(cycle));
    }
    out.push_back(ChainStep{edge.link->link_type, next, edge.link});
    seen.push_back(next);
    current = next;
  }
  return out;
}

void collect_aspects(const Etymology& ety, std::vector<std::string_view>& ids) {
  for (const auto& l : ety.links) {
    ids.insert(ids.end(), l.source_aspects.begin(), l.source_aspects.end());
    ids.insert(ids.end(), l.target_aspects.begin(), l.target_aspects.end());
  }
  for (const auto& sub : ety.sub_etymologies) collect_aspects(sub, ids);
}

std::optional<std::int64_t> earliest(const EtyDate& d) {
  if (d.kind == DateKind::relative) return std::nullopt;
  return d.year_start ? d.year_start : d.year_end;
}

std::optional<std::int64_t> latest(const EtyDate& d) {
  if (d.kind == DateKind::relative) return std::nullopt;
  return d.year_end ? d.year_end : d.year_start;
}

}  // namespace

namespace detail {

bool dates_conflict(const EtyLink& newer, const EtyLink& older) {
  if (!older.date || !newer.date) return false;
  auto start = earliest(*older.date);
  auto end = latest(*newer.date);
  return start && end && *start > *end;
}

void temporal_pairs(const Etymology& ety, std::vector<Diagnostic>& out, bool recursive) {
  for (std::size_t i = 1; i < ety.links.size(); ++i) {
    const auto& older = ety.links[i];
    const auto& newer = ety.links[i - 1];
    if (!dates_conflict(newer, older)) continue;
    out.push_back(make_diagnostic(
        "W-ETY-DATE",
        "link " + std::to_string(older.order) + " (" + older.date->text + ") is more recent than link " +
            std::to_string(newer.order) + " (" + newer.date->text + ")",
        older.id ? older.id : std::optional<std::string>("link[" + std::to_string(i) + "]")));
  }
  if (!recursive) return;
  for (const auto& sub : ety.sub_etymologies) temporal_pairs(sub, out, true);
}

}  // namespace detail

std::vector<ChainStep> ety_chain(const LexicalResource& resource, const LexicalEntry& entry) {
  return chain(graph_of(resource), entry);
}

std::vector<ChainStep> ety_chain(const LexicalResource& resource, std::string_view entry_id) {
  return ety_chain(resource, entry_by_id(resource, entry_id));
}

std::vector<const LexicalEntry*> cognates_of(const LexicalResource& resource, const LexicalEntry& entry) {
  auto g = graph_of(resource);
  std::vector<const LexicalEntry*> hosts{&entry};
  for (const auto& step : chain(g, entry)) hosts.push_back(step.etymon);
  std::vector<std::string_view> ids;
  for (const auto* h : hosts) {
    if (h->etymology) collect_aspects(*h->etymology, ids);
  }
  std::vector<const NodeInfo*> found;
  for (auto id : ids) {
    const NodeInfo* info = resource.find(id);
    const NodeInfo* owner = info ? detail::owner_entry(*info, g) : nullptr;
    if (!owner || owner->entry->kind != EntryKind::cognate) continue;
    if (std::find(found.begin(), found.end(), owner) == found.end()) found.push_back(owner);
  }
  std::sort(found.begin(), found.end(), [](const NodeInfo* a, const NodeInfo* b) { return a->seq < b->seq; });
  std::vector<const LexicalEntry*> out;
  for (const auto* f : found) out.push_back(f->entry);
  return out;
}

std::vector<const LexicalEntry*> cognates_of(const LexicalResource& resource, std::string_view entry_id) {
  return cognates_of(resource, entry_by_id(resource, entry_id));
}

std::vector<Diagnostic> check_temporal_consistency(const Etymology& ety) {
  std::vector<Diagnostic> out;
  detail::temporal_pairs(ety, out, true);
  return out;
}

std::vector<Diagnostic> check_acyclic(const LexicalResource& resource) {
  auto g = graph_of(resource);
  std::vector<Diagnostic> out;
  for (const auto& cycle : detail::ety_cycles(g)) {
    std::string members;
    for (const auto* n : cycle) {
      if (!members.empty()) members += ", ";
      members += detail::node_label(*n);
    }
    out.push_back(make_diagnostic("E-ETY-CYCLE", "etymon cycle through " + members,
                                  detail::node_label(*cycle.front())));
  }
  return out;
}

}  // namespace lmfkit
