#include "lmfkit/validation.hpp"

#include <algorithm>
#include <numeric>

#include "ety_graph.hpp"
#include "walk.hpp"

namespace lmfkit {

namespace {

template <class T>
const T* as(const std::optional<NodeRef>& ref) {
  if (!ref) return nullptr;
  auto* p = std::get_if<const T*>(&*ref);
  return p ? *p : nullptr;
}

template <class T>
const T* as(const NodeRef& ref) {
  auto* p = std::get_if<const T*>(&ref);
  return p ? *p : nullptr;
}

// True when `orders` is a permutation of 1..k.
bool is_permutation_of_range(std::vector<std::uint32_t> orders) {
  std::sort(orders.begin(), orders.end());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] != i + 1) return false;
  }
  return true;
}

std::string describe(const SourceMap* map, const NodeInfo& info) {
  if (map) {
    if (auto it = map->find(info.path); it != map->end()) {
      const auto& l = it->second;
      return (l.file.empty() ? std::string("<input>") : l.file) + ":" + std::to_string(l.line) + ":" +
             std::to_string(l.column);
    }
  }
  return info.path;
}

class Checker {
 public:
  Checker(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
          std::span<const Bibliography> bibliographies, const CheckOptions& options)
      : lexicons_(lexicons),
        options_(options),
        nodes_(detail::collect_nodes(lexicons, crossrefs, bibliographies)),
        table_(detail::index_ids(nodes_)) {}

  std::vector<Diagnostic> run() {
    lexicon_checks();
    for (const auto& d : table_.duplicates) {
      emit(*d.second, "E-ID-DUP", "id " + d.id + " already declared at " + describe(options_.source_map, *d.first));
    }
    for (const auto& n : nodes_) {
      if (const NodeId* id = detail::node_id(n.node); id && !is_ncname(*id)) {
        emit(n, "E-ID-SYNTAX", "id '" + *id + "' is not an NCName");
      }
      std::visit([&](auto* node) { check(n, *node); }, n.node);
    }
    cycle_checks();
    std::stable_sort(found_.begin(), found_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Diagnostic> out;
    out.reserve(found_.size());
    for (auto& [seq, d] : found_) out.push_back(std::move(d));
    return out;
  }

 private:
  void emit_at(std::size_t seq, const std::string& path, std::string label, std::string_view code,
               std::string message) {
    std::optional<SourceLocation> loc;
    if (options_.source_map) {
      if (auto it = options_.source_map->find(path); it != options_.source_map->end()) loc = it->second;
    }
    found_.emplace_back(seq, make_diagnostic(code, std::move(message), std::move(label), std::move(loc)));
  }

  // `sub` names a located child without its own node (a seg), e.g. "seg[2]".
  void emit(const NodeInfo& at, std::string_view code, std::string message, std::string_view sub = {}) {
    if (!sub.empty() && options_.source_map) {
      std::string path = at.path + "/" + std::string(sub);
      if (options_.source_map->count(path)) {
        emit_at(at.seq, path, detail::node_label(at), code, std::move(message));
        return;
      }
    }
    emit_at(at.seq, at.path, detail::node_label(at), code, std::move(message));
  }

  const NodeInfo* resolve(const NodeInfo& at, const NodeId& id, std::string_view what, std::string_view sub = {}) {
    if (auto it = table_.ids.find(id); it != table_.ids.end()) return it->second;
    if (options_.closed_world) {
      emit(at, "E-REF-DANGLING", std::string(what) + " #" + id + " is not declared", sub);
    } else {
      emit(at, "I-REF-EXTERNAL", std::string(what) + " #" + id + " is not declared in this document", sub);
    }
    return nullptr;
  }

  void text(const NodeInfo& at, std::string_view value, std::string_view what) {
    if (value.empty()) emit(at, "E-TEXT-EMPTY", std::string(what) + " is empty");
  }

  void text_opt(const NodeInfo& at, const std::optional<std::string>& value, std::string_view what) {
    if (value) text(at, *value, what);
  }

  void lexicon_checks() {
    for (std::size_t l = 0; l < lexicons_.size(); ++l) {
      if (!lexicons_[l].language.empty()) continue;
      auto first = std::find_if(nodes_.begin(), nodes_.end(),
                                [&](const NodeInfo& n) { return n.lexicon && *n.lexicon >= l; });
      std::size_t seq = first == nodes_.end() ? nodes_.size() : first->seq;
      std::string path = "lexicon[" + std::to_string(l) + "]";
      emit_at(seq, path, path, "E-LANG-EMPTY", "lexicon language tag is empty");
    }
  }

  void features(const NodeInfo& at, const std::vector<GrammaticalFeature>& fs) {
    for (const auto& f : fs) {
      text(at, f.name, "grammatical feature name");
      text(at, f.value, "grammatical feature value");
    }
  }

  void check(const NodeInfo& at, const LexicalEntry& e) {
    const bool nested = at.parent.has_value();
    if (nested != (e.kind == EntryKind::related)) {
      emit(at, "E-ENTRY-KIND",
           nested ? "nested entry must be of kind related" : "top-level entry cannot be of kind related");
    }
    if ((e.kind == EntryKind::related) == e.related_type.empty()) {
      emit(at, "E-ENTRY-KIND",
           e.kind == EntryKind::related ? "related entry has no relation type" : "only related entries carry a relation type");
    }
    auto lemmas = std::count_if(e.forms.begin(), e.forms.end(),
                                [](const Form& f) { return f.form_class == FormClass::lemma; });
    if (lemmas == 0) emit(at, "E-LEMMA-MISSING", "entry has no lemma form");
    if (lemmas > 1) emit(at, "E-LEMMA-DUP", "entry has " + std::to_string(lemmas) + " lemma forms");
    if ((e.kind == EntryKind::etymon || e.kind == EntryKind::cognate) && (!e.language || e.language->empty())) {
      emit(at, "E-ETY-LANG", std::string(to_string(e.kind)) + " entry carries no language");
    } else {
      text_opt(at, e.language, "entry language");
    }
    text_opt(at, e.lang_label, "language label");
    text_opt(at, e.gloss, "entry gloss");
    if (e.kind == EntryKind::standard && e.senses.empty()) emit(at, "W-NO-SENSE", "entry has no sense");
    if (e.kind == EntryKind::related && !e.senses.empty()) {
      emit(at, "I-RE-SENSE", "related entry carries " + std::to_string(e.senses.size()) + " sense(s)");
    }
  }

  void check(const NodeInfo& at, const Form& f) {
    const auto* host = as<LexicalEntry>(at.parent);
    const bool mwe_carrier = host && host->kind == EntryKind::related && !f.segments.empty();
    if (!f.type_authored && (!mwe_carrier || f.form_class != FormClass::lemma)) {
      emit(at, "E-FORM-UNTYPED", "form without a type is only allowed as a multiword lemma");
    }
    if (!f.nested_forms.empty() && f.form_class != FormClass::lemma) {
      emit(at, "E-FORM-NESTING", std::string(to_string(f.form_class)) + " form has nested forms");
    }
    if (!f.segments.empty()) {
      std::vector<std::uint32_t> orders;
      for (std::size_t i = 0; i < f.segments.size(); ++i) {
        const auto& s = f.segments[i];
        const std::string sub = "seg[" + std::to_string(i) + "]";
        orders.push_back(s.order);
        if (s.surface.empty()) emit(at, "E-TEXT-EMPTY", "segment text is empty", sub);
        if (const NodeInfo* target = resolve(at, s.corresp, "segment target", sub)) {
          if (!as<Form>(target->node)) {
            emit(at, "E-REF-KIND",
                 "segment target #" + s.corresp + " is a " + std::string(node_kind(target->node)) + ", not a form",
                 sub);
          }
        }
      }
      if (!is_permutation_of_range(orders)) emit(at, "E-SEG-ORDER", "segment numbers are not 1.." +
                                                                       std::to_string(orders.size()));
      const std::string surface = mwe_surface(f.segments);
      if (f.representations.size() != 1 || f.representations[0] != FormRepresentation{surface, {}, {}}) {
        emit(at, "E-MWE-SURFACE", "multiword surface must be '" + surface + "'");
      }
    } else if (f.representations.empty()) {
      emit(at, "E-FORM-EMPTY", "form has no orthography");
    } else {
      for (const auto& r : f.representations) {
        text(at, r.orthography, "orthography");
        text_opt(at, r.pronunciation, "pronunciation");
        text_opt(at, r.language, "orthography language");
      }
    }
    features(at, f.grammatical_features);
    for (const auto& u : f.usages) {
      text(at, u.type, "usage type");
      text(at, u.value, "usage value");
    }
    if (auto p = layout_problem(f)) emit(at, "E-LAYOUT", *p);
  }

  void texts(const NodeInfo& at, const std::vector<TextRepresentation>& ts, TextKind kind) {
    for (const auto& t : ts) {
      if (t.kind != kind) {
        emit(at, "E-LAYOUT", std::string(to_string(t.kind)) + " text stored as " + std::string(to_string(kind)));
      }
      text(at, t.text, to_string(kind));
      text_opt(at, t.language, "text language");
      for (const auto& b : t.bibliography_refs) {
        if (const NodeInfo* target = resolve(at, b, "bibliography")) {
          if (!as<Bibliography>(target->node)) {
            emit(at, "E-REF-KIND", "#" + b + " is a " + std::string(node_kind(target->node)) + ", not a bibliography");
          }
        }
      }
    }
  }

  void check(const NodeInfo& at, const Sense& s) {
    if (s.definitions.empty() && s.examples.empty() && s.glosses.empty() && s.subsenses.empty()) {
      emit(at, "E-SENSE-EMPTY", "sense has no definition, gloss, example or subsense");
    }
    texts(at, s.definitions, TextKind::definition);
    texts(at, s.examples, TextKind::example);
    texts(at, s.glosses, TextKind::gloss);
    features(at, s.grammatical_features);
    if (auto p = layout_problem(s)) emit(at, "E-LAYOUT", *p);
  }

  void check(const NodeInfo& at, const Etymology& ety) {
    text(at, ety.ety_type, "etymology type");
    if (ety.links.empty() && ety.sub_etymologies.empty()) {
      emit(at, "E-ETY-EMPTY", "etymology has neither links nor sub-etymologies");
    }
  }

  void check(const NodeInfo& at, const EtyLink& link) {
    const auto* ety = as<Etymology>(at.parent);
    const std::size_t position = ety ? static_cast<std::size_t>(&link - ety->links.data()) : 0;
    if (link.order != position + 1) {
      emit(at, "E-LINK-ORDER", "link at position " + std::to_string(position + 1) + " has order " +
                                   std::to_string(link.order));
    }
    if (link.link_type.empty()) emit(at, "E-LINK-EMPTY", "link has no type");
    if (link.source_aspects.empty()) emit(at, "E-LINK-EMPTY", "link has no source aspect");
    if (link.target_aspects.empty()) emit(at, "E-LINK-EMPTY", "link has no target aspect");
    auto aspect = [&](const NodeId& id, std::string_view what) -> const NodeInfo* {
      const NodeInfo* target = resolve(at, id, what);
      if (target && !as<LexicalEntry>(target->node) && !as<Form>(target->node) && !as<Sense>(target->node)) {
        emit(at, "E-REF-KIND", std::string(what) + " #" + id + " is a " + std::string(node_kind(target->node)) +
                                   ", not an entry, form or sense");
        return nullptr;
      }
      return target;
    };
    if (ety && position > 0 && detail::dates_conflict(ety->links[position - 1], link)) {
      emit(at, "W-ETY-DATE", "link " + std::to_string(link.order) + " (" + link.date->text +
                                 ") is more recent than the link before it (" + ety->links[position - 1].date->text + ")");
    }
    std::vector<const NodeInfo*> sources;
    for (const auto& id : link.source_aspects) sources.push_back(aspect(id, "link source"));
    for (const auto& id : link.target_aspects) aspect(id, "link target");
    if (link.date) {
      const auto& d = *link.date;
      bool ok = !d.text.empty();
      switch (d.kind) {
        case DateKind::point: ok = ok && d.year_start && !d.year_end; break;
        case DateKind::range: ok = ok && (d.year_start || d.year_end); break;
        case DateKind::relative: ok = ok && !d.year_start && !d.year_end; break;
      }
      if (!ok) emit(at, "E-DATE-INVALID", std::string(to_string(d.kind)) + " date is malformed");
      if (d.kind == DateKind::range && d.year_start && d.year_end && *d.year_start > *d.year_end) {
        emit(at, "E-DATE-RANGE", "date range " + std::to_string(*d.year_start) + ".." + std::to_string(*d.year_end) +
                                     " runs backwards");
      }
    }
    text_opt(at, link.display_lang, "link language label");
    text_opt(at, link.display_form, "link form");
    text_opt(at, link.display_gloss, "link gloss");
    if (link.display_form_is_oref && !link.display_form) emit(at, "E-LAYOUT", "oRef marker without a link form");
    if (link.display_form && !sources.empty() && sources.front() && sources.front()->entry) {
      const Form* lemma = sources.front()->entry->lemma_form();
      if (lemma) {
        const auto& reps = lemma->representations;
        bool match = std::any_of(reps.begin(), reps.end(),
                                 [&](const FormRepresentation& r) { return r.orthography == *link.display_form; });
        if (!match) {
          emit(at, "W-ETY-DISPLAY", "link form '" + *link.display_form + "' differs from the lemma of #" +
                                        link.source_aspects.front());
        }
      }
    }
  }

  void check(const NodeInfo& at, const CrossRef& x) {
    const NodeInfo* source = resolve(at, x.source, "crossref source");
    std::vector<std::uint32_t> orders;
    bool self = false;
    bool spans = false;
    for (const auto& t : x.targets) {
      orders.push_back(t.order);
      if (t.id == x.source) self = true;
      const NodeInfo* target = resolve(at, t.id, "crossref target");
      if (source && target && source->lexicon && target->lexicon && *source->lexicon != *target->lexicon) {
        spans = true;
      }
    }
    if (orders.empty() || !is_permutation_of_range(orders)) {
      emit(at, "E-XREF-ORDER", "target order indices are not 1.." + std::to_string(orders.size()));
    }
    if (self && (x.ref_type == CrossRefType::semantic_relation || x.ref_type == CrossRefType::cross_reference)) {
      emit(at, "E-XREF-SELF", std::string(to_string(x.ref_type)) + " from #" + x.source + " to itself");
    }
    if (spans) emit(at, "I-XREF-LEXICON", "crossref connects nodes in different lexicons");
  }

  void check(const NodeInfo& at, const Bibliography& b) {
    text(at, b.citation, "citation");
    for (const auto& id : b.attached_to) resolve(at, id, "bibliography attachment");
  }

  void cycle_checks() {
    auto graph = detail::build_ety_graph(nodes_, [&](std::string_view id) -> const NodeInfo* {
      auto it = table_.ids.find(NodeId(id));
      return it == table_.ids.end() ? nullptr : it->second;
    });
    for (const auto& cycle : detail::ety_cycles(graph)) {
      std::string members;
      for (const auto* n : cycle) {
        if (!members.empty()) members += ", ";
        members += detail::node_label(*n);
      }
      emit(*cycle.front(), "E-ETY-CYCLE", "etymon cycle through " + members);
    }
  }

  std::span<const Lexicon> lexicons_;
  const CheckOptions& options_;
  std::vector<NodeInfo> nodes_;
  detail::IdTable table_;
  std::vector<std::pair<std::size_t, Diagnostic>> found_;
};

}  // namespace

std::vector<Diagnostic> check_model(std::span<const Lexicon> lexicons, std::span<const CrossRef> crossrefs,
                                    std::span<const Bibliography> bibliographies, const CheckOptions& options) {
  return Checker(lexicons, crossrefs, bibliographies, options).run();
}

ValidationReport validate_resource(const LexicalResource& resource, const SourceMap* source_map) {
  CheckOptions options;
  options.source_map = source_map;
  return ValidationReport(
      check_model(resource.lexicons(), resource.crossrefs(), resource.bibliographies(), options));
}

}  // namespace lmfkit
