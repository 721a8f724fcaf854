#include "lmfkit/model.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "utf8.hpp"

namespace lmfkit {

namespace {

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [value, name] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::array<std::pair<EntryKind, std::string_view>, 4> kEntryKinds{{
    {EntryKind::standard, "standard"},
    {EntryKind::etymon, "etymon"},
    {EntryKind::cognate, "cognate"},
    {EntryKind::related, "related"},
}};

constexpr std::array<std::pair<FormClass, std::string_view>, 7> kFormClasses{{
    {FormClass::lemma, "lemma"},
    {FormClass::related_form, "related_form"},
    {FormClass::word_form, "word_form"},
    {FormClass::stem, "stem"},
    {FormClass::word_part, "word_part"},
    {FormClass::variant, "variant"},
    {FormClass::inflected, "inflected"},
}};

constexpr std::array<std::pair<TextKind, std::string_view>, 3> kTextKinds{{
    {TextKind::definition, "definition"},
    {TextKind::example, "example"},
    {TextKind::gloss, "gloss"},
}};

constexpr std::array<std::pair<CrossRefType, std::string_view>, 5> kCrossRefTypes{{
    {CrossRefType::semantic_relation, "semantic_relation"},
    {CrossRefType::cross_reference, "cross_reference"},
    {CrossRefType::related_entry, "related_entry"},
    {CrossRefType::mwe_component, "mwe_component"},
    {CrossRefType::etymological_link, "etymological_link"},
}};

constexpr std::array<std::pair<DateKind, std::string_view>, 3> kDateKinds{{
    {DateKind::point, "point"},
    {DateKind::range, "range"},
    {DateKind::relative, "relative"},
}};

constexpr std::array<std::pair<Part, std::string_view>, 11> kParts{{
    {Part::orth, "orth"},
    {Part::pron, "pron"},
    {Part::gram_grp, "gramGrp"},
    {Part::gram, "gram"},
    {Part::usg, "usg"},
    {Part::form, "form"},
    {Part::seg, "seg"},
    {Part::def, "def"},
    {Part::gloss, "gloss"},
    {Part::example, "example"},
    {Part::sense, "sense"},
}};

bool name_start(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' ||
         (c >= 0xC0 && c <= 0xD6) || (c >= 0xD8 && c <= 0xF6) || (c >= 0xF8 && c <= 0x2FF) ||
         (c >= 0x370 && c <= 0x37D) || (c >= 0x37F && c <= 0x1FFF) || (c >= 0x200C && c <= 0x200D) ||
         (c >= 0x2070 && c <= 0x218F) || (c >= 0x2C00 && c <= 0x2FEF) || (c >= 0x3001 && c <= 0xD7FF) ||
         (c >= 0xF900 && c <= 0xFDCF) || (c >= 0xFDF0 && c <= 0xFFFD) || (c >= 0x10000 && c <= 0xEFFFF);
}

bool name_char(char32_t c) {
  return name_start(c) || c == '-' || c == '.' || (c >= '0' && c <= '9') || c == 0xB7 ||
         (c >= 0x300 && c <= 0x36F) || (c >= 0x203F && c <= 0x2040);
}

// Walks a layout against per-part counts and reports the first mismatch.
class LayoutCursor {
 public:
  explicit LayoutCursor(const Layout& layout) : layout_(layout) {}

  template <class OnItem>
  std::optional<std::string> run(OnItem&& on_item) {
    for (const auto& item : layout_) {
      if (item.count == 0) return "layout item " + std::string(to_string(item.part)) + " has count 0";
      if (auto p = on_item(item)) return p;
    }
    return std::nullopt;
  }

 private:
  const Layout& layout_;
};

std::optional<std::string> exhausted(std::string_view what, std::size_t used, std::size_t have) {
  if (used == have) return std::nullopt;
  return "layout accounts for " + std::to_string(used) + " " + std::string(what) + " of " +
         std::to_string(have);
}

}  // namespace

bool is_ncname(std::string_view s) {
  if (s.empty()) return false;
  auto cps = utf8::decode(s);
  if (!cps || cps->empty()) return false;
  if (!name_start((*cps)[0])) return false;
  return std::all_of(cps->begin() + 1, cps->end(), name_char);
}

FormClass mrd_class(FormClass c) {
  switch (c) {
    case FormClass::variant: return FormClass::related_form;
    case FormClass::inflected: return FormClass::word_form;
    default: return c;
  }
}

std::string_view to_string(EntryKind k) { return name_of(kEntryKinds, k); }
std::string_view to_string(FormClass c) { return name_of(kFormClasses, c); }
std::string_view to_string(TextKind k) { return name_of(kTextKinds, k); }
std::string_view to_string(CrossRefType t) { return name_of(kCrossRefTypes, t); }
std::string_view to_string(DateKind k) { return name_of(kDateKinds, k); }
std::string_view to_string(Part p) { return name_of(kParts, p); }

std::optional<EntryKind> entry_kind_from_string(std::string_view s) { return lookup(kEntryKinds, s); }
std::optional<FormClass> form_class_from_string(std::string_view s) { return lookup(kFormClasses, s); }
std::optional<TextKind> text_kind_from_string(std::string_view s) { return lookup(kTextKinds, s); }
std::optional<CrossRefType> crossref_type_from_string(std::string_view s) { return lookup(kCrossRefTypes, s); }
std::optional<DateKind> date_kind_from_string(std::string_view s) { return lookup(kDateKinds, s); }
std::optional<Part> part_from_string(std::string_view s) { return lookup(kParts, s); }

const Form* LexicalEntry::lemma_form() const {
  const Form* found = nullptr;
  for (const auto& f : forms) {
    if (f.form_class != FormClass::lemma) continue;
    if (found) return nullptr;
    found = &f;
  }
  return found;
}

Lemma LexicalEntry::lemma() const {
  const Form* f = lemma_form();
  if (!f) return {};
  return Lemma{f->representations, f->grammatical_features, f->usages};
}

Layout default_layout(const Form& form) {
  Layout out;
  if (form.segments.empty()) {
    for (const auto& r : form.representations) {
      out.push_back({Part::orth});
      if (r.pronunciation) out.push_back({Part::pron});
    }
  }
  if (!form.grammatical_features.empty()) {
    out.push_back({Part::gram_grp, static_cast<std::uint32_t>(form.grammatical_features.size())});
  }
  out.insert(out.end(), form.usages.size(), LayoutItem{Part::usg});
  out.insert(out.end(), form.nested_forms.size(), LayoutItem{Part::form});
  out.insert(out.end(), form.segments.size(), LayoutItem{Part::seg});
  return out;
}

Layout default_layout(const Sense& sense) {
  Layout out;
  if (!sense.grammatical_features.empty()) {
    out.push_back({Part::gram_grp, static_cast<std::uint32_t>(sense.grammatical_features.size())});
  }
  out.insert(out.end(), sense.definitions.size(), LayoutItem{Part::def});
  out.insert(out.end(), sense.glosses.size(), LayoutItem{Part::gloss});
  out.insert(out.end(), sense.examples.size(), LayoutItem{Part::example});
  out.insert(out.end(), sense.subsenses.size(), LayoutItem{Part::sense});
  return out;
}

std::optional<std::string> layout_problem(const Form& form) {
  std::size_t orth = 0, pron = 0, feat = 0, usg = 0, nested = 0, seg = 0;
  bool pron_open = false;
  auto problem = LayoutCursor(form.layout).run([&](const LayoutItem& item) -> std::optional<std::string> {
    switch (item.part) {
      case Part::orth:
        if (!form.segments.empty()) return "orth slot on a segmented form";
        if (orth >= form.representations.size()) return "more orth slots than representations";
        pron_open = form.representations[orth].pronunciation.has_value();
        ++orth;
        return std::nullopt;
      case Part::pron:
        if (!pron_open) return "pron slot without an unpaired pronunciation";
        pron_open = false;
        ++pron;
        return std::nullopt;
      case Part::gram_grp:
        if (feat + item.count > form.grammatical_features.size()) return "gramGrp overruns features";
        feat += item.count;
        return std::nullopt;
      case Part::gram:
        if (feat >= form.grammatical_features.size()) return "gram slot overruns features";
        if (form.grammatical_features[feat].syntax != FeatureSyntax::gram) return "bare feature not in gram syntax";
        ++feat;
        return std::nullopt;
      case Part::usg:
        if (usg++ >= form.usages.size()) return "more usg slots than usages";
        return std::nullopt;
      case Part::form:
        if (nested++ >= form.nested_forms.size()) return "more form slots than nested forms";
        return std::nullopt;
      case Part::seg:
        if (seg++ >= form.segments.size()) return "more seg slots than segments";
        return std::nullopt;
      default:
        return "slot " + std::string(to_string(item.part)) + " not valid in a form";
    }
  });
  if (problem) return problem;
  if (pron_open) return "pronunciation without a pron slot";
  std::size_t prons = std::count_if(form.representations.begin(), form.representations.end(),
                                    [](const FormRepresentation& r) { return r.pronunciation.has_value(); });
  if (form.segments.empty()) {
    if (auto p = exhausted("representations", orth, form.representations.size())) return p;
    if (auto p = exhausted("pronunciations", pron, prons)) return p;
  }
  if (auto p = exhausted("features", feat, form.grammatical_features.size())) return p;
  if (auto p = exhausted("usages", usg, form.usages.size())) return p;
  if (auto p = exhausted("nested forms", nested, form.nested_forms.size())) return p;
  return exhausted("segments", seg, form.segments.size());
}

std::optional<std::string> layout_problem(const Sense& sense) {
  std::size_t feat = 0, def = 0, gloss = 0, ex = 0, sub = 0;
  auto problem = LayoutCursor(sense.layout).run([&](const LayoutItem& item) -> std::optional<std::string> {
    switch (item.part) {
      case Part::gram_grp:
        if (feat + item.count > sense.grammatical_features.size()) return "gramGrp overruns features";
        feat += item.count;
        return std::nullopt;
      case Part::gram:
        if (feat >= sense.grammatical_features.size()) return "gram slot overruns features";
        if (sense.grammatical_features[feat].syntax != FeatureSyntax::gram) return "bare feature not in gram syntax";
        ++feat;
        return std::nullopt;
      case Part::def:
        if (def++ >= sense.definitions.size()) return "more def slots than definitions";
        return std::nullopt;
      case Part::gloss:
        if (gloss++ >= sense.glosses.size()) return "more gloss slots than glosses";
        return std::nullopt;
      case Part::example:
        if (ex++ >= sense.examples.size()) return "more example slots than examples";
        return std::nullopt;
      case Part::sense:
        if (sub++ >= sense.subsenses.size()) return "more sense slots than subsenses";
        return std::nullopt;
      default:
        return "slot " + std::string(to_string(item.part)) + " not valid in a sense";
    }
  });
  if (problem) return problem;
  if (auto p = exhausted("features", feat, sense.grammatical_features.size())) return p;
  if (auto p = exhausted("definitions", def, sense.definitions.size())) return p;
  if (auto p = exhausted("glosses", gloss, sense.glosses.size())) return p;
  if (auto p = exhausted("examples", ex, sense.examples.size())) return p;
  return exhausted("subsenses", sub, sense.subsenses.size());
}

void fill_default_layouts(Form& form) {
  if (form.layout.empty()) form.layout = default_layout(form);
  for (auto& f : form.nested_forms) fill_default_layouts(f);
}

void fill_default_layouts(Sense& sense) {
  if (sense.layout.empty()) sense.layout = default_layout(sense);
  for (auto& s : sense.subsenses) fill_default_layouts(s);
}

void fill_default_layouts(LexicalEntry& entry) {
  for (auto& f : entry.forms) fill_default_layouts(f);
  for (auto& s : entry.senses) fill_default_layouts(s);
  for (auto& r : entry.related) fill_default_layouts(r);
}

std::string mwe_surface(const std::vector<MweSegment>& segments) {
  std::vector<const MweSegment*> sorted;
  sorted.reserve(segments.size());
  for (const auto& s : segments) sorted.push_back(&s);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MweSegment* a, const MweSegment* b) { return a->order < b->order; });
  std::string out;
  for (const auto* s : sorted) {
    if (!out.empty()) out += ' ';
    out += s->surface;
  }
  return out;
}

}  // namespace lmfkit
