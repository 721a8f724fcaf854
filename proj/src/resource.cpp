#include "lmfkit/resource.hpp"

#include <algorithm>

#include "lmfkit/validation.hpp"
#include "walk.hpp"

namespace lmfkit {

namespace detail {

namespace {

std::string indexed(std::string_view base, std::string_view step, std::size_t i) {
  std::string out(base);
  if (!out.empty()) out += '/';
  out += step;
  out += '[';
  out += std::to_string(i);
  out += ']';
  return out;
}

class Walk {
 public:
  explicit Walk(const std::function<void(const NodeInfo&)>& visit) : visit_(visit) {}

  void entry(const LexicalEntry& e, std::string path, std::size_t lex, std::optional<NodeRef> parent) {
    NodeRef self = &e;
    emit(self, path, lex, &e, parent);
    for (std::size_t i = 0; i < e.forms.size(); ++i) form(e.forms[i], indexed(path, "form", i), lex, &e, self);
    for (std::size_t i = 0; i < e.senses.size(); ++i) sense(e.senses[i], indexed(path, "sense", i), lex, &e, self);
    for (std::size_t i = 0; i < e.related.size(); ++i) entry(e.related[i], indexed(path, "re", i), lex, self);
    if (e.etymology) etymology(*e.etymology, path + "/etym", lex, &e, self);
  }

  void crossref(const CrossRef& x, std::string path) { emit(&x, std::move(path), std::nullopt, nullptr, std::nullopt); }

  void bibliography(const Bibliography& b, std::string path) {
    emit(&b, std::move(path), std::nullopt, nullptr, std::nullopt);
  }

 private:
  void form(const Form& f, const std::string& path, std::size_t lex, const LexicalEntry* owner, NodeRef parent) {
    NodeRef self = &f;
    emit(self, path, lex, owner, parent);
    for (std::size_t i = 0; i < f.nested_forms.size(); ++i) {
      form(f.nested_forms[i], indexed(path, "form", i), lex, owner, self);
    }
  }

  void sense(const Sense& s, const std::string& path, std::size_t lex, const LexicalEntry* owner, NodeRef parent) {
    NodeRef self = &s;
    emit(self, path, lex, owner, parent);
    for (std::size_t i = 0; i < s.subsenses.size(); ++i) {
      sense(s.subsenses[i], indexed(path, "sense", i), lex, owner, self);
    }
  }

  void etymology(const Etymology& ety, const std::string& path, std::size_t lex, const LexicalEntry* owner,
                 NodeRef parent) {
    NodeRef self = &ety;
    emit(self, path, lex, owner, parent);
    for (std::size_t i = 0; i < ety.links.size(); ++i) {
      emit(&ety.links[i], indexed(path, "link", i), lex, owner, self);
    }
    for (std::size_t i = 0; i < ety.sub_etymologies.size(); ++i) {
      etymology(ety.sub_etymologies[i], indexed(path, "etym", i), lex, owner, self);
    }
  }

  void emit(NodeRef node, std::string path, std::optional<std::size_t> lex, const LexicalEntry* owner,
            std::optional<NodeRef> parent) {
    visit_(NodeInfo{node, std::move(path), seq_++, lex, owner, parent});
  }

  const std::function<void(const NodeInfo&)>& visit_;
  std::size_t seq_ = 0;
};

}  // namespace

void walk_nodes(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                std::span<const Bibliography> bibliographies, const std::function<void(const NodeInfo&)>& visit) {
  Walk walk(visit);
  for (std::size_t l = 0; l < lexicons.size(); ++l) {
    const std::string base = indexed("", "lexicon", l);
    for (std::size_t i = 0; i < lexicons[l].entries.size(); ++i) {
      walk.entry(lexicons[l].entries[i], indexed(base, "entry", i), l, std::nullopt);
    }
  }
  for (std::size_t i = 0; i < crossrefs.size(); ++i) walk.crossref(crossrefs[i], indexed("", "xref", i));
  for (std::size_t i = 0; i < bibliographies.size(); ++i) {
    walk.bibliography(bibliographies[i], indexed("", "bibl", i));
  }
}

std::vector<NodeInfo> collect_nodes(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                                    std::span<const Bibliography> bibliographies) {
  std::vector<NodeInfo> out;
  walk_nodes(lexicons, crossrefs, bibliographies, [&](const NodeInfo& n) { out.push_back(n); });
  return out;
}

const NodeId* node_id(const NodeRef& node) {
  return std::visit(
      [](auto* n) -> const NodeId* {
        using T = std::remove_cvref_t<decltype(*n)>;
        if constexpr (std::is_same_v<T, Bibliography>) {
          return &n->id;
        } else {
          return n->id ? &*n->id : nullptr;
        }
      },
      node);
}

IdTable index_ids(const std::vector<NodeInfo>& nodes) {
  IdTable table;
  for (const auto& n : nodes) {
    const NodeId* id = node_id(n.node);
    if (!id) continue;
    auto [it, inserted] = table.ids.emplace(*id, &n);
    if (!inserted) table.duplicates.push_back(DuplicateId{*id, it->second, &n});
  }
  return table;
}

std::string node_label(const NodeInfo& info) {
  const NodeId* id = node_id(info.node);
  return id ? *id : info.path;
}

}  // namespace detail

std::string_view node_kind(const NodeRef& node) {
  static constexpr std::string_view kNames[] = {"entry", "form", "sense", "etymology", "link", "crossref",
                                                "bibliography"};
  return kNames[node.index()];
}

struct LexicalResource::Data {
  std::vector<Lexicon> lexicons;
  std::vector<CrossRef> crossrefs;
  std::vector<Bibliography> bibliographies;
  std::vector<NodeInfo> nodes;
  std::map<NodeId, NodeInfo> ids;
  std::map<NodeId, std::vector<NodeId>, std::less<>> backlinks;
};

namespace {

std::shared_ptr<LexicalResource::Data> index_data(std::shared_ptr<LexicalResource::Data> data) {
  data->nodes = detail::collect_nodes(data->lexicons, data->crossrefs, data->bibliographies);
  for (const auto& n : data->nodes) {
    if (const NodeId* id = detail::node_id(n.node)) data->ids.emplace(*id, n);
  }
  for (const auto& b : data->bibliographies) {
    for (const auto& target : b.attached_to) {
      auto& list = data->backlinks[target];
      if (std::find(list.begin(), list.end(), b.id) == list.end()) list.push_back(b.id);
    }
  }
  return data;
}

}  // namespace

namespace {

std::string query_message(QueryError::Kind kind, const std::string& subject, const std::vector<std::string>& nodes) {
  switch (kind) {
    case QueryError::Kind::not_found: return "not found: " + subject;
    case QueryError::Kind::no_etymology: return "no etymology: " + subject;
    case QueryError::Kind::not_an_mwe: return "not a multiword expression: " + subject;
    case QueryError::Kind::cyclic_etymology: {
      std::string out = "cyclic etymology at " + subject + ":";
      for (const auto& n : nodes) out += " " + n;
      return out;
    }
  }
  return subject;
}

}  // namespace

QueryError::QueryError(Kind kind, std::string subject, std::vector<std::string> nodes)
    : std::runtime_error(query_message(kind, subject, nodes)),
      kind_(kind),
      subject_(std::move(subject)),
      nodes_(std::move(nodes)) {}

LexicalResource::LexicalResource() : data_(std::make_shared<const Data>()) {}

LexicalResource::LexicalResource(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

const std::vector<Lexicon>& LexicalResource::lexicons() const { return data_->lexicons; }
const std::vector<CrossRef>& LexicalResource::crossrefs() const { return data_->crossrefs; }
const std::vector<Bibliography>& LexicalResource::bibliographies() const { return data_->bibliographies; }
const std::map<NodeId, NodeInfo>& LexicalResource::id_index() const { return data_->ids; }
std::span<const NodeInfo> LexicalResource::nodes() const { return data_->nodes; }

const NodeInfo* LexicalResource::find(std::string_view id) const {
  auto it = data_->ids.find(NodeId(id));
  return it == data_->ids.end() ? nullptr : &it->second;
}

std::span<const NodeId> LexicalResource::bibliographies_of(std::string_view id) const {
  auto it = data_->backlinks.find(id);
  if (it == data_->backlinks.end()) return {};
  return it->second;
}

bool operator==(const LexicalResource& a, const LexicalResource& b) {
  return a.data_ == b.data_ ||
         (a.lexicons() == b.lexicons() && a.crossrefs() == b.crossrefs() && a.bibliographies() == b.bibliographies());
}

LexicalResource build_resource(std::vector<Lexicon> lexicons, std::vector<CrossRef> crossrefs,
                               std::vector<Bibliography> bibliographies) {
  for (auto& lex : lexicons) {
    for (auto& e : lex.entries) fill_default_layouts(e);
  }
  auto diagnostics = check_model(lexicons, crossrefs, bibliographies);
  for (auto& d : diagnostics) {
    // Cycles leave the resource well-formed; check_acyclic reports them.
    if (d.severity == Severity::error && d.code != "E-ETY-CYCLE") throw LmfError(std::move(d));
  }
  auto data = std::make_shared<LexicalResource::Data>();
  data->lexicons = std::move(lexicons);
  data->crossrefs = std::move(crossrefs);
  data->bibliographies = std::move(bibliographies);
  return LexicalResource(index_data(std::move(data)));
}

std::vector<NodeInfo> resolve(const LexicalResource& resource, const CrossRef& ref) {
  std::vector<const CrossRefTarget*> targets;
  targets.reserve(ref.targets.size());
  for (const auto& t : ref.targets) targets.push_back(&t);
  std::stable_sort(targets.begin(), targets.end(),
                   [](const CrossRefTarget* a, const CrossRefTarget* b) { return a->order < b->order; });
  std::vector<NodeInfo> out;
  out.reserve(targets.size());
  for (const auto* t : targets) {
    const NodeInfo* info = resource.find(t->id);
    if (!info) {
      throw LmfError(make_diagnostic("E-REF-DANGLING", "crossref target #" + t->id + " is not declared",
                                     ref.id ? ref.id : std::optional<std::string>(ref.source)));
    }
    out.push_back(*info);
  }
  return out;
}

LexicalResource attach_bibliography(const LexicalResource& resource, Bibliography bib) {
  auto bibs = resource.bibliographies();
  bibs.push_back(std::move(bib));
  return build_resource(resource.lexicons(), resource.crossrefs(), std::move(bibs));
}

CrossRef mwe_crossref(const LexicalEntry& related) {
  CrossRef ref;
  ref.id = related.id;
  ref.ref_type = CrossRefType::mwe_component;
  ref.source = related.id.value_or("");
  for (const auto& f : related.forms) {
    for (const auto& s : f.segments) ref.targets.push_back({s.corresp, s.order});
  }
  return ref;
}

}  // namespace lmfkit
