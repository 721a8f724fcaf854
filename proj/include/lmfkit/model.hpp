#pragma once

// Lexical object model: core classes, machine-readable-dictionary form
// refinements and the etymology extension. Plain value types; structural
// equality covers authored-syntax markers (layouts, feature syntax, form type
// tokens) so serialization round-trips can be checked with ==.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lmfkit {

using NodeId = std::string;

// True for XML NCName-shaped ids (the syntax of xml:id).
bool is_ncname(std::string_view s);

enum class EntryKind { standard, etymon, cognate, related };

enum class FormClass { lemma, related_form, word_form, stem, word_part, variant, inflected };

// MRD class a serialization token stands for: variant -> related_form,
// inflected -> word_form; everything else maps to itself.
FormClass mrd_class(FormClass c);

enum class TextKind { definition, example, gloss };

enum class CrossRefType { semantic_relation, cross_reference, related_entry, mwe_component, etymological_link };

enum class DateKind { point, range, relative };

std::string_view to_string(EntryKind k);
std::string_view to_string(FormClass c);
std::string_view to_string(TextKind k);
std::string_view to_string(CrossRefType t);
std::string_view to_string(DateKind k);

std::optional<EntryKind> entry_kind_from_string(std::string_view s);
std::optional<FormClass> form_class_from_string(std::string_view s);
std::optional<TextKind> text_kind_from_string(std::string_view s);
std::optional<CrossRefType> crossref_type_from_string(std::string_view s);
std::optional<DateKind> date_kind_from_string(std::string_view s);

// How a grammatical feature was written: as a named element (<pos>noun</pos>)
// or as <gram type="number">plural</gram>.
enum class FeatureSyntax { element, gram };

struct GrammaticalFeature {
  std::string name;
  std::string value;
  FeatureSyntax syntax = FeatureSyntax::element;

  friend bool operator==(const GrammaticalFeature&, const GrammaticalFeature&) = default;
};

struct Usage {
  std::string type;
  std::string value;

  friend bool operator==(const Usage&, const Usage&) = default;
};

struct FormRepresentation {
  std::string orthography;
  std::optional<std::string> pronunciation;
  std::optional<std::string> language;

  friend bool operator==(const FormRepresentation&, const FormRepresentation&) = default;
};

struct TextRepresentation {
  std::string text;
  TextKind kind = TextKind::definition;
  std::optional<std::string> language;
  std::vector<NodeId> bibliography_refs;

  friend bool operator==(const TextRepresentation&, const TextRepresentation&) = default;
};

struct MweSegment {
  NodeId corresp;
  std::uint32_t order = 0;
  std::string surface;

  friend bool operator==(const MweSegment&, const MweSegment&) = default;
};

// One authored child slot of a form or sense. Items consume the node's lists
// in sequence; `count` is the number of features inside a gramGrp and 1
// otherwise. A pron slot belongs to the representation of the latest orth.
enum class Part { orth, pron, gram_grp, gram, usg, form, seg, def, gloss, example, sense };

std::string_view to_string(Part p);
std::optional<Part> part_from_string(std::string_view s);

struct LayoutItem {
  Part part = Part::orth;
  std::uint32_t count = 1;

  friend bool operator==(const LayoutItem&, const LayoutItem&) = default;
};

using Layout = std::vector<LayoutItem>;

struct Form {
  std::optional<NodeId> id;
  FormClass form_class = FormClass::lemma;
  bool type_authored = true;
  std::vector<FormRepresentation> representations;
  std::vector<GrammaticalFeature> grammatical_features;
  std::vector<Usage> usages;
  std::vector<Form> nested_forms;
  std::vector<MweSegment> segments;
  Layout layout;

  friend bool operator==(const Form&, const Form&) = default;
};

struct Sense {
  std::optional<NodeId> id;
  std::vector<TextRepresentation> definitions;
  std::vector<TextRepresentation> examples;
  std::vector<TextRepresentation> glosses;
  std::vector<GrammaticalFeature> grammatical_features;
  std::vector<Sense> subsenses;
  Layout layout;

  friend bool operator==(const Sense&, const Sense&) = default;
};

struct EtyDate {
  DateKind kind = DateKind::relative;
  std::string text;
  std::optional<std::int64_t> year_start;
  std::optional<std::int64_t> year_end;

  friend bool operator==(const EtyDate&, const EtyDate&) = default;
};

struct EtyLink {
  std::optional<NodeId> id;
  std::string link_type;
  std::vector<NodeId> source_aspects;
  std::vector<NodeId> target_aspects;
  std::uint32_t order = 0;
  std::optional<EtyDate> date;
  // Human-readable rendering carried alongside the link (<lang>, <orth> or
  // <oRef>, <gloss>); the source etymon entry remains authoritative.
  std::optional<std::string> display_lang;
  std::optional<std::string> display_form;
  bool display_form_is_oref = false;
  std::optional<std::string> display_gloss;

  friend bool operator==(const EtyLink&, const EtyLink&) = default;
};

struct Etymology {
  std::optional<NodeId> id;
  std::string ety_type;
  std::vector<EtyLink> links;
  std::vector<Etymology> sub_etymologies;

  friend bool operator==(const Etymology&, const Etymology&) = default;
};

struct Lemma {
  std::vector<FormRepresentation> representations;
  std::vector<GrammaticalFeature> grammatical_features;
  std::vector<Usage> usages;

  friend bool operator==(const Lemma&, const Lemma&) = default;
};

struct LexicalEntry {
  std::optional<NodeId> id;
  EntryKind kind = EntryKind::standard;
  // Entry language; required for etymons and cognates.
  std::optional<std::string> language;
  // Authored language abbreviation kept for display ("OIr.", "F.").
  std::optional<std::string> lang_label;
  std::optional<std::string> gloss;
  // <re> type token for kind == related.
  std::string related_type;
  std::vector<Form> forms;
  std::vector<Sense> senses;
  std::vector<LexicalEntry> related;
  std::optional<Etymology> etymology;

  // The single form_class == lemma form, or nullptr when absent/ambiguous.
  const Form* lemma_form() const;
  // Lemma view over lemma_form(); empty when there is none.
  Lemma lemma() const;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

struct Lexicon {
  std::string language = "und";
  bool language_declared = false;
  std::vector<LexicalEntry> entries;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

struct CrossRefTarget {
  NodeId id;
  std::uint32_t order = 0;

  friend bool operator==(const CrossRefTarget&, const CrossRefTarget&) = default;
};

struct CrossRef {
  std::optional<NodeId> id;
  CrossRefType ref_type = CrossRefType::cross_reference;
  NodeId source;
  std::vector<CrossRefTarget> targets;

  friend bool operator==(const CrossRef&, const CrossRef&) = default;
};

struct Bibliography {
  NodeId id;
  std::string citation;
  std::vector<NodeId> attached_to;

  friend bool operator==(const Bibliography&, const Bibliography&) = default;
};

// Default child sequence used when a node carries no recorded layout.
Layout default_layout(const Form& form);
Layout default_layout(const Sense& sense);

// Describes the first disagreement between a recorded layout and the node's
// lists, or nullopt when the layout accounts for every item exactly once.
std::optional<std::string> layout_problem(const Form& form);
std::optional<std::string> layout_problem(const Sense& sense);

// Recursively fills empty layouts with the defaults.
void fill_default_layouts(Form& form);
void fill_default_layouts(Sense& sense);
void fill_default_layouts(LexicalEntry& entry);

// Single-space join of segment surfaces in `n` order.
std::string mwe_surface(const std::vector<MweSegment>& segments);

}  // namespace lmfkit
