#include "lmfkit/mrd.hpp"

#include <algorithm>

namespace lmfkit {

namespace {

void collect(const std::vector<Form>& forms, FormClass cls, std::vector<const Form*>& out) {
  for (const auto& f : forms) {
    if (f.form_class == cls) out.push_back(&f);
    collect(f.nested_forms, cls, out);
  }
}

void collect_word_forms(const std::vector<Form>& forms, std::vector<const Form*>& out) {
  for (const auto& f : forms) {
    if (mrd_class(f.form_class) == FormClass::word_form) out.push_back(&f);
    collect_word_forms(f.nested_forms, out);
  }
}

}  // namespace

std::vector<MweComponent> mwe_components(const LexicalResource& resource, const LexicalEntry& related) {
  const std::string subject = related.id.value_or(related.lemma_form() && !related.lemma_form()->representations.empty()
                                                      ? related.lemma_form()->representations.front().orthography
                                                      : "<entry>");
  if (related.kind != EntryKind::related) throw QueryError(QueryError::Kind::not_an_mwe, subject);
  std::vector<const MweSegment*> segments;
  for (const auto& f : related.forms) {
    for (const auto& s : f.segments) segments.push_back(&s);
  }
  if (segments.empty()) throw QueryError(QueryError::Kind::not_an_mwe, subject);
  std::stable_sort(segments.begin(), segments.end(),
                   [](const MweSegment* a, const MweSegment* b) { return a->order < b->order; });
  std::vector<MweComponent> out;
  out.reserve(segments.size());
  for (const auto* s : segments) {
    if (!resource.find(s->corresp)) {
      throw LmfError(make_diagnostic("E-REF-DANGLING", "segment target #" + s->corresp + " is not declared", subject));
    }
    out.push_back(MweComponent{s->corresp, s->surface});
  }
  return out;
}

std::vector<MweComponent> mwe_components(const LexicalResource& resource, std::string_view entry_id) {
  const NodeInfo* info = resource.find(entry_id);
  auto* e = info ? std::get_if<const LexicalEntry*>(&info->node) : nullptr;
  if (!e) throw QueryError(QueryError::Kind::not_found, std::string(entry_id));
  return mwe_components(resource, **e);
}

std::vector<const Form*> forms_by_class(const LexicalEntry& entry, FormClass cls) {
  std::vector<const Form*> out;
  collect(entry.forms, cls, out);
  return out;
}

std::vector<InflectionRow> inflection_table(const LexicalEntry& entry) {
  std::vector<const Form*> forms;
  collect_word_forms(entry.forms, forms);
  std::vector<InflectionRow> rows;
  rows.reserve(forms.size());
  for (const auto* f : forms) {
    InflectionRow row;
    if (!f->representations.empty()) row.orthography = f->representations.front().orthography;
    row.features = f->grammatical_features;
    row.usages = f->usages;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lmfkit
