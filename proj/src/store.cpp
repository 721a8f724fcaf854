#include "lmfkit/store.hpp"

#include <openssl/sha.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "lmfkit/etymology.hpp"
#include "lmfkit/tei.hpp"
#include "lmfkit/validation.hpp"
#include "walk.hpp"

namespace lmfkit {

using nlohmann::json;

std::string nfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  icu::UnicodeString out = norm->normalize(in, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

Store::Store(LexicalResource resource, std::vector<SourceFile> files, SourceMap source_map, ValidationReport report)
    : resource_(std::move(resource)),
      files_(std::move(files)),
      source_map_(std::move(source_map)),
      report_(std::move(report)) {
  for (const auto& n : resource_.nodes()) {
    auto* e = std::get_if<const LexicalEntry*>(&n.node);
    if (!e || (*e)->kind != EntryKind::standard) continue;
    const Form* lemma = (*e)->lemma_form();
    if (!lemma) continue;
    const std::string handle = detail::node_label(n);
    for (const auto& r : lemma->representations) {
      auto& slot = lemma_index_[nfc(r.orthography)];
      if (slot.empty() || slot.back() != handle) slot.push_back(handle);
    }
  }
}

namespace {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : digest) {
    out += kHex[c >> 4];
    out += kHex[c & 0xF];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(path);
  return ss.str();
}

// Moves a single-document path ("lexicon[0]/...", "xref[2]") to its slot in
// the merged resource. Id keys pass through unchanged.
std::string rebase(const std::string& key, std::size_t lexicon, std::size_t xref_offset, std::size_t bibl_offset) {
  auto shift = [&](std::string_view head, std::size_t offset) -> std::optional<std::string> {
    if (!key.starts_with(head)) return std::nullopt;
    auto close = key.find(']', head.size());
    if (close == std::string::npos) return std::nullopt;
    std::size_t i = std::stoul(key.substr(head.size(), close - head.size()));
    return std::string(head) + std::to_string(i + offset) + key.substr(close);
  };
  if (key.starts_with("lexicon[0]")) return "lexicon[" + std::to_string(lexicon) + "]" + key.substr(10);
  if (auto k = shift("xref[", xref_offset)) return *k;
  if (auto k = shift("bibl[", bibl_offset)) return *k;
  return key;
}

}  // namespace

IngestResult ingest_texts(std::vector<SourceText> sources, const SerializationProfile& profile) {
  std::sort(sources.begin(), sources.end(), [](const SourceText& a, const SourceText& b) { return a.path < b.path; });
  std::vector<std::future<ParseReport<Document>>> jobs;
  jobs.reserve(sources.size());
  for (const auto& s : sources) {
    jobs.push_back(std::async(std::launch::async, [&s, &profile] {
      ParseOptions options;
      options.file = s.path;
      options.model_checks = false;
      return parse_document(s.text, profile, options);
    }));
  }

  std::vector<Lexicon> lexicons;
  std::vector<CrossRef> crossrefs;
  std::vector<Bibliography> bibliographies;
  std::vector<SourceFile> files;
  std::vector<std::string> file_order;
  SourceMap map;
  std::vector<Diagnostic> diagnostics;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    auto parsed = jobs[i].get();
    files.push_back(SourceFile{sources[i].path, sha256_hex(sources[i].text)});
    file_order.push_back(sources[i].path);
    diagnostics.insert(diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    if (!parsed.value) continue;
    for (const auto& [key, loc] : parsed.source_map) {
      map.emplace(rebase(key, lexicons.size(), crossrefs.size(), bibliographies.size()), loc);
    }
    auto& doc = *parsed.value;
    lexicons.push_back(std::move(doc.lexicon));
    crossrefs.insert(crossrefs.end(), doc.crossrefs.begin(), doc.crossrefs.end());
    bibliographies.insert(bibliographies.end(), doc.bibliographies.begin(), doc.bibliographies.end());
  }

  CheckOptions options;
  options.closed_world = true;
  options.source_map = &map;
  auto model = check_model(lexicons, crossrefs, bibliographies, options);
  diagnostics.insert(diagnostics.end(), model.begin(), model.end());
  sort_diagnostics(diagnostics, file_order);

  IngestResult result;
  result.report = ValidationReport(std::move(diagnostics));
  if (result.report.ok()) {
    result.store = Store(build_resource(std::move(lexicons), std::move(crossrefs), std::move(bibliographies)),
                         std::move(files), std::move(map), result.report);
  }
  return result;
}

IngestResult ingest(std::vector<std::string> paths, const SerializationProfile& profile) {
  std::sort(paths.begin(), paths.end());
  std::vector<std::future<std::string>> reads;
  reads.reserve(paths.size());
  for (const auto& p : paths) reads.push_back(std::async(std::launch::async, [&p] { return read_file(p); }));
  std::vector<SourceText> sources;
  for (std::size_t i = 0; i < paths.size(); ++i) sources.push_back(SourceText{paths[i], reads[i].get()});
  return ingest_texts(std::move(sources), profile);
}

std::vector<EntrySummary> lookup(const Store& store, std::string_view headword) {
  std::vector<EntrySummary> out;
  auto it = store.lemma_index().find(nfc(headword));
  if (it == store.lemma_index().end()) return out;
  const auto& resource = store.resource();
  for (const auto& handle : it->second) {
    const NodeInfo* info = resource.find(handle);
    if (!info) {
      for (const auto& n : resource.nodes()) {
        if (n.path == handle) info = &n;
      }
    }
    if (!info) continue;
    const LexicalEntry& e = *std::get<const LexicalEntry*>(info->node);
    EntrySummary s;
    s.id = e.id;
    s.handle = handle;
    s.language = e.language.value_or(info->lexicon ? resource.lexicons()[*info->lexicon].language : "und");
    const Form* lemma = e.lemma_form();
    if (lemma && !lemma->representations.empty()) s.lemma = lemma->representations.front().orthography;
    s.sense_count = e.senses.size();
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON interchange

namespace {

constexpr std::string_view kFormat = "lmfkit-json/1";

void put(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

std::optional<std::string> opt(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<std::string>();
}

template <class T, class F>
json array(const std::vector<T>& xs, F f) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

template <class T, class F>
std::vector<T> items(const json& j, const char* key, F f) {
  std::vector<T> out;
  for (const auto& x : j.at(key)) out.push_back(f(x));
  return out;
}

template <class E>
E parse_enum(const json& j, const char* key, std::optional<E> (*from)(std::string_view)) {
  auto s = j.at(key).get<std::string>();
  auto v = from(s);
  if (!v) throw std::invalid_argument("unknown " + std::string(key) + " '" + s + "'");
  return *v;
}

std::optional<FeatureSyntax> syntax_from(std::string_view s) {
  if (s == "element") return FeatureSyntax::element;
  if (s == "gram") return FeatureSyntax::gram;
  return std::nullopt;
}

json feature_json(const GrammaticalFeature& f) {
  return {{"name", f.name}, {"value", f.value}, {"syntax", f.syntax == FeatureSyntax::gram ? "gram" : "element"}};
}

GrammaticalFeature feature_from(const json& j) {
  return {j.at("name").get<std::string>(), j.at("value").get<std::string>(), parse_enum(j, "syntax", &syntax_from)};
}

json layout_json(const Layout& l) {
  return array(l, [](const LayoutItem& i) { return json{{"part", std::string(to_string(i.part))}, {"count", i.count}}; });
}

Layout layout_from(const json& j) {
  Layout out;
  for (const auto& i : j) out.push_back({parse_enum(i, "part", &part_from_string), i.at("count").get<std::uint32_t>()});
  return out;
}

json form_json(const Form& f) {
  json j;
  put(j, "id", f.id);
  j["class"] = std::string(to_string(f.form_class));
  j["type_authored"] = f.type_authored;
  j["representations"] = array(f.representations, [](const FormRepresentation& r) {
    json o{{"orthography", r.orthography}};
    put(o, "pronunciation", r.pronunciation);
    put(o, "language", r.language);
    return o;
  });
  j["features"] = array(f.grammatical_features, feature_json);
  j["usages"] = array(f.usages, [](const Usage& u) { return json{{"type", u.type}, {"value", u.value}}; });
  j["forms"] = array(f.nested_forms, form_json);
  j["segments"] = array(f.segments, [](const MweSegment& s) {
    return json{{"corresp", s.corresp}, {"n", s.order}, {"surface", s.surface}};
  });
  j["layout"] = layout_json(f.layout);
  return j;
}

Form form_from(const json& j) {
  Form f;
  f.id = opt(j, "id");
  f.form_class = parse_enum(j, "class", &form_class_from_string);
  f.type_authored = j.at("type_authored").get<bool>();
  f.representations = items<FormRepresentation>(j, "representations", [](const json& o) {
    return FormRepresentation{o.at("orthography").get<std::string>(), opt(o, "pronunciation"), opt(o, "language")};
  });
  f.grammatical_features = items<GrammaticalFeature>(j, "features", feature_from);
  f.usages = items<Usage>(j, "usages", [](const json& o) {
    return Usage{o.at("type").get<std::string>(), o.at("value").get<std::string>()};
  });
  f.nested_forms = items<Form>(j, "forms", form_from);
  f.segments = items<MweSegment>(j, "segments", [](const json& o) {
    return MweSegment{o.at("corresp").get<std::string>(), o.at("n").get<std::uint32_t>(),
                      o.at("surface").get<std::string>()};
  });
  f.layout = layout_from(j.at("layout"));
  return f;
}

json text_json(const TextRepresentation& t) {
  json j{{"text", t.text}, {"kind", std::string(to_string(t.kind))}, {"bibliography_refs", t.bibliography_refs}};
  put(j, "language", t.language);
  return j;
}

TextRepresentation text_from(const json& j) {
  return {j.at("text").get<std::string>(), parse_enum(j, "kind", &text_kind_from_string), opt(j, "language"),
          j.at("bibliography_refs").get<std::vector<NodeId>>()};
}

json sense_json(const Sense& s) {
  json j;
  put(j, "id", s.id);
  j["definitions"] = array(s.definitions, text_json);
  j["examples"] = array(s.examples, text_json);
  j["glosses"] = array(s.glosses, text_json);
  j["features"] = array(s.grammatical_features, feature_json);
  j["subsenses"] = array(s.subsenses, sense_json);
  j["layout"] = layout_json(s.layout);
  return j;
}

Sense sense_from(const json& j) {
  Sense s;
  s.id = opt(j, "id");
  s.definitions = items<TextRepresentation>(j, "definitions", text_from);
  s.examples = items<TextRepresentation>(j, "examples", text_from);
  s.glosses = items<TextRepresentation>(j, "glosses", text_from);
  s.grammatical_features = items<GrammaticalFeature>(j, "features", feature_from);
  s.subsenses = items<Sense>(j, "subsenses", sense_from);
  s.layout = layout_from(j.at("layout"));
  return s;
}

json link_json(const EtyLink& l) {
  json j{{"type", l.link_type},
         {"sources", l.source_aspects},
         {"targets", l.target_aspects},
         {"order", l.order},
         {"display_form_is_oref", l.display_form_is_oref}};
  put(j, "id", l.id);
  if (l.date) {
    json d{{"kind", std::string(to_string(l.date->kind))}, {"text", l.date->text}};
    if (l.date->year_start) d["start"] = *l.date->year_start;
    if (l.date->year_end) d["end"] = *l.date->year_end;
    j["date"] = d;
  }
  put(j, "display_lang", l.display_lang);
  put(j, "display_form", l.display_form);
  put(j, "display_gloss", l.display_gloss);
  return j;
}

EtyLink link_from(const json& j) {
  EtyLink l;
  l.id = opt(j, "id");
  l.link_type = j.at("type").get<std::string>();
  l.source_aspects = j.at("sources").get<std::vector<NodeId>>();
  l.target_aspects = j.at("targets").get<std::vector<NodeId>>();
  l.order = j.at("order").get<std::uint32_t>();
  l.display_form_is_oref = j.at("display_form_is_oref").get<bool>();
  if (j.contains("date")) {
    const auto& d = j.at("date");
    EtyDate date;
    date.kind = parse_enum(d, "kind", &date_kind_from_string);
    date.text = d.at("text").get<std::string>();
    if (d.contains("start")) date.year_start = d.at("start").get<std::int64_t>();
    if (d.contains("end")) date.year_end = d.at("end").get<std::int64_t>();
    l.date = date;
  }
  l.display_lang = opt(j, "display_lang");
  l.display_form = opt(j, "display_form");
  l.display_gloss = opt(j, "display_gloss");
  return l;
}

json etymology_json(const Etymology& e) {
  json j{{"type", e.ety_type}, {"links", array(e.links, link_json)}, {"sub", array(e.sub_etymologies, etymology_json)}};
  put(j, "id", e.id);
  return j;
}

Etymology etymology_from(const json& j) {
  Etymology e;
  e.id = opt(j, "id");
  e.ety_type = j.at("type").get<std::string>();
  e.links = items<EtyLink>(j, "links", link_from);
  e.sub_etymologies = items<Etymology>(j, "sub", etymology_from);
  return e;
}

json entry_json(const LexicalEntry& e) {
  json j;
  put(j, "id", e.id);
  j["kind"] = std::string(to_string(e.kind));
  put(j, "language", e.language);
  put(j, "lang_label", e.lang_label);
  put(j, "gloss", e.gloss);
  if (!e.related_type.empty()) j["related_type"] = e.related_type;
  j["forms"] = array(e.forms, form_json);
  j["senses"] = array(e.senses, sense_json);
  j["related"] = array(e.related, entry_json);
  if (e.etymology) j["etymology"] = etymology_json(*e.etymology);
  return j;
}

LexicalEntry entry_from(const json& j) {
  LexicalEntry e;
  e.id = opt(j, "id");
  e.kind = parse_enum(j, "kind", &entry_kind_from_string);
  e.language = opt(j, "language");
  e.lang_label = opt(j, "lang_label");
  e.gloss = opt(j, "gloss");
  e.related_type = opt(j, "related_type").value_or("");
  e.forms = items<Form>(j, "forms", form_from);
  e.senses = items<Sense>(j, "senses", sense_from);
  e.related = items<LexicalEntry>(j, "related", entry_from);
  if (j.contains("etymology")) e.etymology = etymology_from(j.at("etymology"));
  return e;
}

}  // namespace

std::string export_json(const Store& store) {
  if (!store.report().ok()) {
    throw LmfError(make_diagnostic("E-EXPORT-INVALID", "store has " + std::to_string(store.report().errors) +
                                                           " error diagnostic(s)"));
  }
  const auto& r = store.resource();
  json doc;
  doc["format"] = kFormat;
  doc["lexicons"] = array(r.lexicons(), [](const Lexicon& l) {
    return json{{"language", l.language},
                {"language_declared", l.language_declared},
                {"entries", array(l.entries, entry_json)}};
  });
  doc["crossrefs"] = array(r.crossrefs(), [](const CrossRef& x) {
    json j{{"type", std::string(to_string(x.ref_type))},
           {"source", x.source},
           {"targets", array(x.targets, [](const CrossRefTarget& t) { return json{{"id", t.id}, {"order", t.order}}; })}};
    put(j, "id", x.id);
    return j;
  });
  doc["bibliographies"] = array(r.bibliographies(), [](const Bibliography& b) {
    return json{{"id", b.id}, {"citation", b.citation}, {"attached_to", b.attached_to}};
  });
  return doc.dump(2) + "\n";
}

Store import_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) throw std::invalid_argument("unsupported format");
    auto lexicons = items<Lexicon>(doc, "lexicons", [](const json& l) {
      return Lexicon{l.at("language").get<std::string>(), l.at("language_declared").get<bool>(),
                     items<LexicalEntry>(l, "entries", entry_from)};
    });
    auto crossrefs = items<CrossRef>(doc, "crossrefs", [](const json& x) {
      CrossRef c;
      c.id = opt(x, "id");
      c.ref_type = parse_enum(x, "type", &crossref_type_from_string);
      c.source = x.at("source").get<std::string>();
      c.targets = items<CrossRefTarget>(x, "targets", [](const json& t) {
        return CrossRefTarget{t.at("id").get<std::string>(), t.at("order").get<std::uint32_t>()};
      });
      return c;
    });
    auto bibs = items<Bibliography>(doc, "bibliographies", [](const json& b) {
      return Bibliography{b.at("id").get<std::string>(), b.at("citation").get<std::string>(),
                          b.at("attached_to").get<std::vector<NodeId>>()};
    });
    auto resource = build_resource(std::move(lexicons), std::move(crossrefs), std::move(bibs));
    return Store(resource, {}, {}, validate_resource(resource));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed interchange JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Etymology rendering and statistics

namespace {

std::string lemma_text(const LexicalEntry& e) {
  const Form* lemma = e.lemma_form();
  return lemma && !lemma->representations.empty() ? lemma->representations.front().orthography : "?";
}

}  // namespace

std::string etym_trace(const Store& store, std::string_view headword) {
  auto hits = lookup(store, headword);
  if (hits.empty()) throw QueryError(QueryError::Kind::not_found, std::string(headword));
  const LexicalEntry* entry = nullptr;
  for (const auto& h : hits) {
    const NodeInfo* info = h.id ? store.resource().find(*h.id) : nullptr;
    if (!info) {
      for (const auto& n : store.resource().nodes()) {
        if (n.path == h.handle) info = &n;
      }
    }
    const auto* e = info ? std::get<const LexicalEntry*>(info->node) : nullptr;
    if (e && e->etymology) {
      entry = e;
      break;
    }
  }
  if (!entry) throw QueryError(QueryError::Kind::no_etymology, std::string(headword));
  std::string out = lemma_text(*entry);
  for (const auto& step : ety_chain(store.resource(), *entry)) {
    out += " ←(" + step.link_type + ")← " + lemma_text(*step.etymon);
    if (step.etymon->language) out += " [" + *step.etymon->language + "]";
    const auto& gloss = step.link->display_gloss ? step.link->display_gloss : step.etymon->gloss;
    if (gloss) out += " '" + *gloss + "'";
  }
  return out;
}

StatsReport stats(const Store& store) {
  StatsReport s;
  for (const auto& n : store.resource().nodes()) {
    if (auto* e = std::get_if<const LexicalEntry*>(&n.node)) {
      ++s.entries_by_kind[std::string(to_string((*e)->kind))];
      if ((*e)->kind == EntryKind::related &&
          std::any_of((*e)->forms.begin(), (*e)->forms.end(), [](const Form& f) { return !f.segments.empty(); })) {
        ++s.mwes;
      }
    } else if (auto* f = std::get_if<const Form*>(&n.node)) {
      ++s.forms_by_class[std::string(to_string((*f)->form_class))];
    } else if (std::holds_alternative<const Sense*>(n.node)) {
      ++s.senses;
    } else if (std::holds_alternative<const Etymology*>(n.node)) {
      ++s.etymologies;
    } else if (auto* l = std::get_if<const EtyLink*>(&n.node)) {
      ++s.links_by_type[(*l)->link_type];
    }
  }
  const auto& r = store.report();
  s.diagnostics_by_severity = {{"error", r.errors}, {"warning", r.warnings}, {"info", r.infos}};
  return s;
}

namespace {

json stats_json(const StatsReport& s) {
  return json{{"entries_by_kind", s.entries_by_kind}, {"forms_by_class", s.forms_by_class},
              {"senses", s.senses},                   {"mwes", s.mwes},
              {"etymologies", s.etymologies},         {"links_by_type", s.links_by_type},
              {"diagnostics_by_severity", s.diagnostics_by_severity}};
}

}  // namespace

std::string render_text(const StatsReport& s) {
  std::string out;
  auto section = [&](std::string_view title, const std::map<std::string, std::size_t>& counts) {
    std::size_t total = 0;
    for (const auto& [k, v] : counts) total += v;
    out += std::string(title) + ": " + std::to_string(total) + "\n";
    for (const auto& [k, v] : counts) out += "  " + k + ": " + std::to_string(v) + "\n";
  };
  section("entries", s.entries_by_kind);
  section("forms", s.forms_by_class);
  out += "senses: " + std::to_string(s.senses) + "\n";
  out += "mwes: " + std::to_string(s.mwes) + "\n";
  out += "etymologies: " + std::to_string(s.etymologies) + "\n";
  section("links", s.links_by_type);
  section("diagnostics", s.diagnostics_by_severity);
  return out;
}

std::string render_json(const StatsReport& s) { return stats_json(s).dump(2) + "\n"; }

}  // namespace lmfkit
