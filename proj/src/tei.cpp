#include "lmfkit/tei.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

#include "conform.hpp"
#include "lmfkit/validation.hpp"
#include "utf8.hpp"
#include "xml.hpp"

namespace lmfkit {

namespace {

constexpr std::array<std::pair<std::string_view, FormClass>, 7> kFormTypes{{
    {"lemma", FormClass::lemma},
    {"variant", FormClass::variant},
    {"inflected", FormClass::inflected},
    {"related", FormClass::related_form},
    {"wordForm", FormClass::word_form},
    {"stem", FormClass::stem},
    {"part", FormClass::word_part},
}};

constexpr std::array<std::pair<std::string_view, CrossRefType>, 5> kXrTypes{{
    {"semanticRelation", CrossRefType::semantic_relation},
    {"crossReference", CrossRefType::cross_reference},
    {"relatedEntry", CrossRefType::related_entry},
    {"mweComponent", CrossRefType::mwe_component},
    {"etymologicalLink", CrossRefType::etymological_link},
}};

}  // namespace

std::string_view tei_form_type(FormClass c) {
  for (const auto& [token, cls] : kFormTypes) {
    if (cls == c) return token;
  }
  return {};
}

std::optional<FormClass> form_class_from_tei(std::string_view token) {
  for (const auto& [t, cls] : kFormTypes) {
    if (t == token) return cls;
  }
  return std::nullopt;
}

std::string_view tei_crossref_type(CrossRefType t) {
  for (const auto& [token, type] : kXrTypes) {
    if (type == t) return token;
  }
  return {};
}

std::optional<CrossRefType> crossref_type_from_tei(std::string_view token) {
  for (const auto& [t, type] : kXrTypes) {
    if (t == token) return type;
  }
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------------
// XML tree -> model

std::string indexed(const std::string& base, std::string_view step, std::size_t i) {
  return base + "/" + std::string(step) + "[" + std::to_string(i) + "]";
}

std::optional<std::string> attr(const xml::Element& e, std::string_view name) {
  if (const std::string* v = e.attr(name)) return utf8::collapse_whitespace(*v);
  return std::nullopt;
}

std::string strip_ref(std::string_view v) { return std::string(v.starts_with('#') ? v.substr(1) : v); }

std::vector<NodeId> refs(const xml::Element& e, std::string_view name) {
  std::vector<NodeId> out;
  if (const std::string* v = e.attr(name)) {
    for (const auto& part : utf8::split_space(*v)) out.push_back(strip_ref(part));
  }
  return out;
}

template <class Int>
Int number(const xml::Element& e, std::string_view name) {
  Int n{};
  if (auto v = attr(e, name)) std::from_chars(v->data(), v->data() + v->size(), n);
  return n;
}

std::string text(const xml::Element& e) { return utf8::collapse_whitespace(e.text); }

class Reader {
 public:
  Reader(const std::string& file, SourceMap& map, std::vector<Diagnostic>& diags)
      : file_(file), map_(map), diags_(diags) {}

  Document document(const xml::Element& root) {
    Document doc;
    if (root.name == "entry") {
      doc.shape = Document::Shape::entry;
      LexicalEntry e = entry(root, "lexicon[0]/entry[0]", false);
      doc.lexicon.language = e.language.value_or("und");
      doc.lexicon.language_declared = false;
      doc.lexicon.entries.push_back(std::move(e));
      return doc;
    }
    doc.shape = Document::Shape::body;
    if (auto lang = attr(root, "xml:lang")) {
      doc.lexicon.language = *lang;
      doc.lexicon.language_declared = true;
    } else {
      diags_.push_back(make_diagnostic("W-NO-LANG", "<body> declares no xml:lang; lexicon language is und",
                                       "lexicon[0]", loc(root)));
    }
    for (const auto& c : root.children) {
      if (c.name == "entry") {
        doc.lexicon.entries.push_back(entry(c, indexed("lexicon[0]", "entry", doc.lexicon.entries.size()), false));
      } else if (c.name == "xr") {
        doc.crossrefs.push_back(crossref(c, "xref[" + std::to_string(doc.crossrefs.size()) + "]"));
      } else if (c.name == "bibl") {
        doc.bibliographies.push_back(bibliography(c, "bibl[" + std::to_string(doc.bibliographies.size()) + "]"));
      }
    }
    return doc;
  }

 private:
  SourceLocation loc(const xml::Element& e) const { return SourceLocation{file_, e.line, e.column}; }

  void place(const xml::Element& e, const std::string& path, const std::optional<NodeId>& id) {
    map_.emplace(path, loc(e));
    if (id) map_.emplace(*id, loc(e));
  }

  LexicalEntry entry(const xml::Element& el, const std::string& path, bool nested) {
    LexicalEntry e;
    e.id = attr(el, "xml:id");
    place(el, path, e.id);
    auto type = attr(el, "type");
    if (nested) {
      e.kind = EntryKind::related;
      e.related_type = type.value_or("");
    } else if (type) {
      e.kind = entry_kind_from_string(*type).value_or(EntryKind::standard);
    }
    e.language = attr(el, "xml:lang");
    for (const auto& c : el.children) {
      if (c.name == "form") {
        e.forms.push_back(form(c, indexed(path, "form", e.forms.size())));
      } else if (c.name == "lang") {
        e.lang_label = text(c);
      } else if (c.name == "gloss") {
        e.gloss = text(c);
      } else if (c.name == "sense") {
        e.senses.push_back(sense(c, indexed(path, "sense", e.senses.size())));
      } else if (c.name == "re") {
        e.related.push_back(entry(c, indexed(path, "re", e.related.size()), true));
      } else if (c.name == "etym") {
        e.etymology = etymology(c, path + "/etym");
      }
    }
    return e;
  }

  static GrammaticalFeature feature(const xml::Element& c) {
    if (c.name == "gram") return GrammaticalFeature{attr(c, "type").value_or(""), text(c), FeatureSyntax::gram};
    return GrammaticalFeature{c.name, text(c), FeatureSyntax::element};
  }

  static void gram_group(const xml::Element& c, std::vector<GrammaticalFeature>& out, Layout& layout) {
    for (const auto& g : c.children) out.push_back(feature(g));
    layout.push_back({Part::gram_grp, static_cast<std::uint32_t>(c.children.size())});
  }

  Form form(const xml::Element& el, const std::string& path) {
    Form f;
    f.id = attr(el, "xml:id");
    place(el, path, f.id);
    if (auto type = attr(el, "type")) {
      f.form_class = form_class_from_tei(*type).value_or(FormClass::lemma);
    } else {
      f.type_authored = false;
    }
    for (const auto& c : el.children) {
      if (c.name == "orth") {
        f.representations.push_back(FormRepresentation{c.text, std::nullopt, attr(c, "xml:lang")});
        f.layout.push_back({Part::orth});
      } else if (c.name == "pron") {
        if (f.representations.empty() || f.representations.back().pronunciation) {
          diags_.push_back(make_diagnostic("E-FORM-PRON",
                                           f.representations.empty() ? "<pron> before any <orth>"
                                                                     : "second <pron> for one <orth>",
                                           f.id.value_or(path), loc(c)));
          continue;
        }
        f.representations.back().pronunciation = c.text;
        f.layout.push_back({Part::pron});
      } else if (c.name == "gramGrp") {
        gram_group(c, f.grammatical_features, f.layout);
      } else if (c.name == "gram") {
        f.grammatical_features.push_back(feature(c));
        f.layout.push_back({Part::gram});
      } else if (c.name == "usg") {
        f.usages.push_back(Usage{attr(c, "type").value_or(""), text(c)});
        f.layout.push_back({Part::usg});
      } else if (c.name == "form") {
        f.nested_forms.push_back(form(c, indexed(path, "form", f.nested_forms.size())));
        f.layout.push_back({Part::form});
      } else if (c.name == "seg") {
        map_.emplace(indexed(path, "seg", f.segments.size()), loc(c));
        f.segments.push_back(MweSegment{strip_ref(attr(c, "corresp").value_or("")), number<std::uint32_t>(c, "n"),
                                        text(c)});
        f.layout.push_back({Part::seg});
      }
    }
    if (!f.segments.empty() && f.representations.empty()) {
      f.representations.push_back(FormRepresentation{mwe_surface(f.segments), std::nullopt, std::nullopt});
    }
    return f;
  }

  static TextRepresentation text_rep(const xml::Element& c, TextKind kind, bool verbatim) {
    return TextRepresentation{verbatim ? c.text : text(c), kind, attr(c, "xml:lang"), refs(c, "source")};
  }

  Sense sense(const xml::Element& el, const std::string& path) {
    Sense s;
    s.id = attr(el, "xml:id");
    place(el, path, s.id);
    for (const auto& c : el.children) {
      if (c.name == "gramGrp") {
        gram_group(c, s.grammatical_features, s.layout);
      } else if (c.name == "gram") {
        s.grammatical_features.push_back(feature(c));
        s.layout.push_back({Part::gram});
      } else if (c.name == "def") {
        s.definitions.push_back(text_rep(c, TextKind::definition, true));
        s.layout.push_back({Part::def});
      } else if (c.name == "gloss") {
        s.glosses.push_back(text_rep(c, TextKind::gloss, false));
        s.layout.push_back({Part::gloss});
      } else if (c.name == "cit") {
        for (const auto& q : c.children) s.examples.push_back(text_rep(q, TextKind::example, true));
        s.layout.push_back({Part::example});
      } else if (c.name == "sense") {
        s.subsenses.push_back(sense(c, indexed(path, "sense", s.subsenses.size())));
        s.layout.push_back({Part::sense});
      }
    }
    return s;
  }

  Etymology etymology(const xml::Element& el, const std::string& path) {
    Etymology ety;
    ety.id = attr(el, "xml:id");
    place(el, path, ety.id);
    ety.ety_type = attr(el, "type").value_or("");
    for (const auto& c : el.children) {
      if (c.name == "cit") {
        ety.links.push_back(link(c, indexed(path, "link", ety.links.size())));
      } else if (c.name == "etym") {
        ety.sub_etymologies.push_back(etymology(c, indexed(path, "etym", ety.sub_etymologies.size())));
      }
    }
    return ety;
  }

  EtyLink link(const xml::Element& el, const std::string& path) {
    EtyLink l;
    l.id = attr(el, "xml:id");
    place(el, path, l.id);
    l.link_type = attr(el, "subtype").value_or("");
    l.order = number<std::uint32_t>(el, "n");
    l.source_aspects = refs(el, "corresp");
    l.target_aspects = refs(el, "target");
    for (const auto& c : el.children) {
      if (c.name == "lang") {
        l.display_lang = text(c);
      } else if (c.name == "orth" || c.name == "oRef") {
        l.display_form = c.text;
        l.display_form_is_oref = c.name == "oRef";
      } else if (c.name == "gloss") {
        l.display_gloss = text(c);
      } else if (c.name == "date") {
        l.date = date(c, l.id.value_or(path));
      }
    }
    return l;
  }

  EtyDate date(const xml::Element& c, const std::string& node) {
    EtyDate d;
    d.text = text(c);
    const bool when = c.attr("when"), before = c.attr("notBefore"), after = c.attr("notAfter");
    if (when) {
      d.kind = DateKind::point;
      d.year_start = number<std::int64_t>(c, "when");
      if (before || after) {
        diags_.push_back(make_diagnostic("E-DATE-INVALID", "<date> mixes @when with a range", node, loc(c)));
      }
    } else if (before || after) {
      d.kind = DateKind::range;
      if (before) d.year_start = number<std::int64_t>(c, "notBefore");
      if (after) d.year_end = number<std::int64_t>(c, "notAfter");
    } else {
      d.kind = DateKind::relative;
    }
    return d;
  }

  CrossRef crossref(const xml::Element& el, const std::string& path) {
    CrossRef x;
    x.id = attr(el, "xml:id");
    place(el, path, x.id);
    x.ref_type = crossref_type_from_tei(attr(el, "type").value_or("")).value_or(CrossRefType::cross_reference);
    x.source = strip_ref(attr(el, "corresp").value_or(""));
    for (const auto& r : el.children) {
      x.targets.push_back(CrossRefTarget{strip_ref(attr(r, "target").value_or("")), number<std::uint32_t>(r, "n")});
    }
    return x;
  }

  Bibliography bibliography(const xml::Element& el, const std::string& path) {
    Bibliography b;
    b.id = attr(el, "xml:id").value_or("");
    place(el, path, b.id);
    b.citation = text(el);
    b.attached_to = refs(el, "corresp");
    return b;
  }

  const std::string& file_;
  SourceMap& map_;
  std::vector<Diagnostic>& diags_;
};

// ---------------------------------------------------------------------------
// model -> XML tree

[[noreturn]] void unserializable(std::string message) {
  throw LmfError(make_diagnostic("E-UNSERIALIZABLE", std::move(message)));
}

xml::Element node(std::string name) {
  xml::Element e;
  e.name = std::move(name);
  return e;
}

void set(xml::Element& e, std::string name, const std::string& value) {
  e.attributes.push_back(xml::Attribute{std::move(name), value});
}

void set(xml::Element& e, std::string name, const std::optional<std::string>& value) {
  if (value) set(e, std::move(name), *value);
}

std::string ref_list(const std::vector<NodeId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ' ';
    out += '#' + id;
  }
  return out;
}

xml::Element leaf(std::string name, std::string body) {
  xml::Element e = node(std::move(name));
  e.text = std::move(body);
  return e;
}

xml::Element feature_element(const GrammaticalFeature& f) {
  if (f.syntax == FeatureSyntax::gram) {
    xml::Element e = leaf("gram", f.value);
    set(e, "type", f.name);
    return e;
  }
  return leaf(f.name, f.value);
}

class Writer {
 public:
  xml::Element entry(const LexicalEntry& e) {
    if (e.kind == EntryKind::related) unserializable("a related entry can only appear inside its host");
    xml::Element el = node("entry");
    if (e.kind == EntryKind::etymon || e.kind == EntryKind::cognate) set(el, "type", std::string(to_string(e.kind)));
    if (!e.related_type.empty()) unserializable("relation type on a non-related entry");
    set(el, "xml:id", e.id);
    set(el, "xml:lang", e.language);
    for (const auto& f : e.forms) el.children.push_back(form(f));
    if (e.lang_label) el.children.push_back(leaf("lang", *e.lang_label));
    if (e.gloss) el.children.push_back(leaf("gloss", *e.gloss));
    for (const auto& s : e.senses) el.children.push_back(sense(s));
    for (const auto& r : e.related) el.children.push_back(related(r));
    if (e.etymology) el.children.push_back(etymology(*e.etymology));
    return el;
  }

  xml::Element etymology(const Etymology& ety) {
    xml::Element el = node("etym");
    set(el, "type", ety.ety_type);
    set(el, "xml:id", ety.id);
    for (const auto& l : ety.links) el.children.push_back(link(l));
    for (const auto& sub : ety.sub_etymologies) el.children.push_back(etymology(sub));
    return el;
  }

  xml::Element crossref(const CrossRef& x) {
    xml::Element el = node("xr");
    set(el, "type", std::string(tei_crossref_type(x.ref_type)));
    set(el, "xml:id", x.id);
    set(el, "corresp", "#" + x.source);
    for (const auto& t : x.targets) {
      xml::Element r = node("ref");
      set(r, "target", "#" + t.id);
      set(r, "n", std::to_string(t.order));
      el.children.push_back(std::move(r));
    }
    return el;
  }

  xml::Element bibliography(const Bibliography& b) {
    xml::Element el = leaf("bibl", b.citation);
    set(el, "xml:id", b.id);
    if (!b.attached_to.empty()) set(el, "corresp", ref_list(b.attached_to));
    return el;
  }

 private:
  xml::Element related(const LexicalEntry& e) {
    if (e.kind != EntryKind::related) unserializable("nested entry is not of kind related");
    if (e.language || e.lang_label || e.gloss || e.etymology || !e.related.empty()) {
      unserializable("related entry carries fields <re> cannot hold");
    }
    xml::Element el = node("re");
    set(el, "type", e.related_type);
    set(el, "xml:id", e.id);
    for (const auto& f : e.forms) el.children.push_back(form(f));
    for (const auto& s : e.senses) el.children.push_back(sense(s));
    return el;
  }

  template <class Node>
  static Layout layout_of(const Node& n) {
    if (n.layout.empty()) return default_layout(n);
    if (auto p = layout_problem(n)) unserializable("layout does not match content: " + *p);
    return n.layout;
  }

  xml::Element form(const Form& f) {
    xml::Element el = node("form");
    if (f.type_authored) set(el, "type", std::string(tei_form_type(f.form_class)));
    else if (f.form_class != FormClass::lemma || f.segments.empty()) unserializable("untyped form outside a multiword lemma");
    set(el, "xml:id", f.id);
    if (!f.segments.empty() &&
        (f.representations.size() != 1 || f.representations[0] != FormRepresentation{mwe_surface(f.segments), {}, {}})) {
      unserializable("multiword form representation differs from its segments");
    }
    std::size_t orth = 0, feat = 0, usg = 0, nested = 0, seg = 0;
    for (const auto& item : layout_of(f)) {
      switch (item.part) {
        case Part::orth: {
          const auto& r = f.representations[orth++];
          xml::Element o = leaf("orth", r.orthography);
          set(o, "xml:lang", r.language);
          el.children.push_back(std::move(o));
          break;
        }
        case Part::pron:
          el.children.push_back(leaf("pron", *f.representations[orth - 1].pronunciation));
          break;
        case Part::gram_grp: {
          xml::Element g = node("gramGrp");
          for (std::uint32_t k = 0; k < item.count; ++k) g.children.push_back(feature_element(f.grammatical_features[feat++]));
          el.children.push_back(std::move(g));
          break;
        }
        case Part::gram:
          el.children.push_back(feature_element(f.grammatical_features[feat++]));
          break;
        case Part::usg: {
          const auto& u = f.usages[usg++];
          xml::Element e = leaf("usg", u.value);
          set(e, "type", u.type);
          el.children.push_back(std::move(e));
          break;
        }
        case Part::form:
          el.children.push_back(form(f.nested_forms[nested++]));
          break;
        case Part::seg: {
          const auto& s = f.segments[seg++];
          xml::Element e = leaf("seg", s.surface);
          set(e, "corresp", "#" + s.corresp);
          set(e, "n", std::to_string(s.order));
          el.children.push_back(std::move(e));
          break;
        }
        default:
          unserializable("layout slot not valid in a form");
      }
    }
    return el;
  }

  static xml::Element text_element(std::string name, const TextRepresentation& t) {
    xml::Element e = leaf(std::move(name), t.text);
    set(e, "xml:lang", t.language);
    if (!t.bibliography_refs.empty()) set(e, "source", ref_list(t.bibliography_refs));
    return e;
  }

  xml::Element sense(const Sense& s) {
    xml::Element el = node("sense");
    set(el, "xml:id", s.id);
    std::size_t feat = 0, def = 0, gloss = 0, ex = 0, sub = 0;
    for (const auto& item : layout_of(s)) {
      switch (item.part) {
        case Part::gram_grp: {
          xml::Element g = node("gramGrp");
          for (std::uint32_t k = 0; k < item.count; ++k) g.children.push_back(feature_element(s.grammatical_features[feat++]));
          el.children.push_back(std::move(g));
          break;
        }
        case Part::gram:
          el.children.push_back(feature_element(s.grammatical_features[feat++]));
          break;
        case Part::def:
          el.children.push_back(text_element("def", s.definitions[def++]));
          break;
        case Part::gloss: {
          const auto& g = s.glosses[gloss++];
          if (!g.bibliography_refs.empty()) unserializable("gloss cannot cite a bibliography");
          el.children.push_back(text_element("gloss", g));
          break;
        }
        case Part::example: {
          xml::Element cit = node("cit");
          set(cit, "type", std::string("example"));
          cit.children.push_back(text_element("quote", s.examples[ex++]));
          el.children.push_back(std::move(cit));
          break;
        }
        case Part::sense:
          el.children.push_back(sense(s.subsenses[sub++]));
          break;
        default:
          unserializable("layout slot not valid in a sense");
      }
    }
    return el;
  }

  xml::Element link(const EtyLink& l) {
    xml::Element el = node("cit");
    set(el, "type", std::string("etymon"));
    set(el, "subtype", l.link_type);
    set(el, "xml:id", l.id);
    set(el, "n", std::to_string(l.order));
    set(el, "corresp", ref_list(l.source_aspects));
    set(el, "target", ref_list(l.target_aspects));
    if (l.display_lang) el.children.push_back(leaf("lang", *l.display_lang));
    if (l.display_form) el.children.push_back(leaf(l.display_form_is_oref ? "oRef" : "orth", *l.display_form));
    else if (l.display_form_is_oref) unserializable("oRef marker without a link form");
    if (l.display_gloss) el.children.push_back(leaf("gloss", *l.display_gloss));
    if (l.date) el.children.push_back(date(*l.date));
    return el;
  }

  static xml::Element date(const EtyDate& d) {
    xml::Element el = leaf("date", d.text);
    switch (d.kind) {
      case DateKind::point:
        if (!d.year_start || d.year_end) unserializable("point date needs exactly a start year");
        set(el, "when", std::to_string(*d.year_start));
        break;
      case DateKind::range:
        if (!d.year_start && !d.year_end) unserializable("range date without years");
        if (d.year_start) set(el, "notBefore", std::to_string(*d.year_start));
        if (d.year_end) set(el, "notAfter", std::to_string(*d.year_end));
        break;
      case DateKind::relative:
        if (d.year_start || d.year_end) unserializable("relative date with years");
        break;
    }
    return el;
  }
};

bool xml_chars(std::string_view s) {
  auto cps = utf8::decode(s);
  if (!cps) return false;
  return std::all_of(cps->begin(), cps->end(), [](char32_t c) {
    return c == 0x9 || c == 0xA || c == 0xD || (c >= 0x20 && c <= 0xD7FF) || (c >= 0xE000 && c <= 0xFFFD) ||
           (c >= 0x10000 && c <= 0x10FFFF);
  });
}

// Values must survive the trip through XML and whitespace normalization.
void check_values(const xml::Element& e, const SerializationProfile& profile) {
  const ElementRule* rule = profile.rule_for(e.name, e.attr("type"));
  for (const auto& a : e.attributes) {
    if (!xml_chars(a.value) || utf8::collapse_whitespace(a.value) != a.value) {
      unserializable("@" + a.name + " value '" + a.value + "' on <" + e.name + "> is not in normal form");
    }
  }
  if (!xml_chars(e.text)) unserializable("<" + e.name + "> text holds characters XML cannot carry");
  if (rule && rule->content == ContentKind::text && utf8::collapse_whitespace(e.text) != e.text) {
    unserializable("<" + e.name + "> text '" + e.text + "' has leading, trailing or repeated whitespace");
  }
  for (const auto& c : e.children) check_values(c, profile);
}

std::string emit(const xml::Element& root, const SerializationProfile& profile, bool declare_ns) {
  check_values(root, profile);
  auto problems = detail::check_tree(root, profile, "");
  if (!problems.empty()) unserializable("output violates the profile: " + problems.front().message);
  return detail::write_canonical(root, profile, declare_ns);
}

template <class T>
void finish(ParseReport<T>& report) {
  sort_diagnostics(report.diagnostics);
}

}  // namespace

ParseReport<Document> parse_document(std::string_view input, const SerializationProfile& profile,
                                     const ParseOptions& options) {
  ParseReport<Document> report;
  auto tree = xml::parse(input, options.file);
  report.diagnostics = std::move(tree.diagnostics);
  if (!tree.root) return report;
  auto problems = detail::check_tree(*tree.root, profile, options.file);
  if (!problems.empty()) {
    report.diagnostics.insert(report.diagnostics.end(), problems.begin(), problems.end());
    finish(report);
    return report;
  }
  Reader reader(options.file, report.source_map, report.diagnostics);
  Document doc = reader.document(*tree.root);
  if (options.model_checks) {
    CheckOptions check;
    check.closed_world = options.closed_world;
    check.source_map = &report.source_map;
    auto model = check_model(std::span(&doc.lexicon, 1), doc.crossrefs, doc.bibliographies, check);
    report.diagnostics.insert(report.diagnostics.end(), model.begin(), model.end());
  }
  finish(report);
  if (!has_errors(report.diagnostics)) report.value = std::move(doc);
  return report;
}

ParseReport<LexicalEntry> parse_entry(std::string_view input, const SerializationProfile& profile,
                                      const ParseOptions& options) {
  auto doc = parse_document(input, profile, options);
  ParseReport<LexicalEntry> report{std::nullopt, std::move(doc.diagnostics), std::move(doc.source_map)};
  if (doc.value && doc.value->shape != Document::Shape::entry) {
    report.diagnostics.insert(report.diagnostics.begin(),
                              make_diagnostic("E-PROFILE-ROOT", "expected an <entry> document element", std::nullopt,
                                              SourceLocation{options.file, 1, 1}));
    return report;
  }
  if (doc.value) report.value = std::move(doc.value->lexicon.entries.front());
  return report;
}

std::string serialize_entry(const LexicalEntry& entry, const SerializationProfile& profile) {
  Writer w;
  return emit(w.entry(entry), profile, true);
}

std::string serialize_document(const Document& doc, const SerializationProfile& profile) {
  Writer w;
  if (doc.shape == Document::Shape::entry) {
    if (doc.lexicon.entries.size() != 1 || !doc.crossrefs.empty() || !doc.bibliographies.empty()) {
      unserializable("a bare entry document holds exactly one entry and nothing else");
    }
    const auto& e = doc.lexicon.entries.front();
    if (doc.lexicon.language_declared || doc.lexicon.language != e.language.value_or("und")) {
      unserializable("a bare entry document takes its language from the entry");
    }
    return emit(w.entry(e), profile, true);
  }
  xml::Element body = node("body");
  if (doc.lexicon.language_declared) set(body, "xml:lang", doc.lexicon.language);
  else if (doc.lexicon.language != "und") unserializable("undeclared lexicon language must be und");
  for (const auto& e : doc.lexicon.entries) body.children.push_back(w.entry(e));
  for (const auto& x : doc.crossrefs) body.children.push_back(w.crossref(x));
  for (const auto& b : doc.bibliographies) body.children.push_back(w.bibliography(b));
  return emit(body, profile, true);
}

std::string serialize_etymology(const Etymology& ety, const SerializationProfile& profile) {
  Writer w;
  xml::Element el = w.etymology(ety);
  check_values(el, profile);
  return detail::write_canonical(el, profile, false);
}

ParseReport<std::string> canonicalize(std::string_view input, const SerializationProfile& profile,
                                      const ParseOptions& options) {
  ParseReport<std::string> report;
  auto tree = xml::parse(input, options.file);
  report.diagnostics = std::move(tree.diagnostics);
  if (!tree.root) return report;
  auto problems = detail::check_tree(*tree.root, profile, options.file);
  report.diagnostics.insert(report.diagnostics.end(), problems.begin(), problems.end());
  finish(report);
  if (!has_errors(report.diagnostics)) report.value = detail::write_canonical(*tree.root, profile, true);
  return report;
}

}  // namespace lmfkit
