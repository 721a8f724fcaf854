#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace testing_support {

using namespace lmfkit;

std::string fixture_path(const std::string& name) { return std::string(LMFKIT_FIXTURES) + "/" + name; }

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(LMFKIT_FIXTURES)) {
    if (e.path().extension() == ".xml") out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SourceText> corpus() {
  std::vector<SourceText> out;
  for (const auto& name : fixture_names()) out.push_back({name, read_fixture(name)});
  return out;
}

std::vector<Mutation> fault_suite() {
  return {
      {"dangling segment", "figure3.xml", {{"#dead_form", "#nope"}}, "E-REF-DANGLING", 44, 7},
      {"segment numbers skip", "figure3.xml", {{"n=\"2\">center", "n=\"3\">center"}}, "E-SEG-ORDER", 43, 5},
      {"cross-file duplicate id", "dead.xml", {{"xml:id=\"dead\"", "xml:id=\"run\""}}, "E-ID-DUP", 1, 1},
      {"duplicate id in file", "coverage.xml", {{"xml:id=\"run_sense_manage\"", "xml:id=\"run_sense\""}}, "E-ID-DUP", 32, 7},
      {"missing lemma", "dead.xml", {{"type=\"lemma\"", "type=\"stem\""}}, "E-LEMMA-MISSING", 1, 1},
      {"second lemma", "figure3.xml", {{"<form type=\"inflected\">\n    <orth>centers", "<form type=\"lemma\">\n    <orth>centers"}},
       "E-LEMMA-DUP", 1, 1},
      {"unknown element", "figure3.xml", {{"<usg type=\"geo\">U.S</usg>\n    <form", "<note>U.S</note>\n    <form"}},
       "E-PROFILE-ELEMENT", 8, 5},
      {"unknown attribute", "figure3.xml", {{"<sense>\n    <def>the point", "<sense colour=\"red\">\n    <def>the point"}},
       "E-PROFILE-ATTR", 27, 3},
      {"form type outside vocabulary", "figure3.xml", {{"<form type=\"inflected\">\n    <orth>centres", "<form type=\"plural\">\n    <orth>centres"}},
       "E-PROFILE-VALUE", 22, 3},
      {"cit without type", "figure3.xml", {{"<cit type=\"example\">\n      <quote>earth", "<cit>\n      <quote>earth"}},
       "E-PROFILE-REQUIRED", 29, 5},
      {"mismatched end tag", "figure3.xml", {{"</sense>\n  <sense>", "</sens>\n  <sense>"}}, "E-XML-MALFORMED", 32, 5},
      {"etymon self-loop", "klein-center.xml", {{"corresp=\"#kentron_grc\" target=\"#centrum_la\"", "corresp=\"#kentron_grc\" target=\"#kentron_grc\""}},
       "E-ETY-CYCLE", 50, 3},
      {"two-etymon cycle", "coverage.xml", {{"corresp=\"#rinnan_gem\" target=\"#run_sense\"", "corresp=\"#rinnan_ang\" target=\"#rinnan_gem\""}},
       "E-ETY-CYCLE", 69, 3},
      {"link order gap", "coverage.xml", {{"n=\"2\" corresp=\"#rinnan_gem\"", "n=\"3\" corresp=\"#rinnan_gem\""}}, "E-LINK-ORDER", 50, 7},
      {"inverted date range", "coverage.xml", {{"notBefore=\"700\"", "notBefore=\"1200\""}}, "E-DATE-RANGE", 45, 7},
      {"point mixed with range", "coverage.xml", {{"when=\"-500\"", "when=\"-500\" notAfter=\"100\""}}, "E-DATE-INVALID", 52, 9},
      {"non-canonical year", "coverage.xml", {{"when=\"-500\"", "when=\"-0500\""}}, "E-PROFILE-VALUE", 52, 9},
      {"crossref order gap", "coverage.xml", {{"<ref target=\"#ran_form\" n=\"1\"/>", "<ref target=\"#ran_form\" n=\"3\"/>"}},
       "E-XREF-ORDER", 83, 3},
      {"relation to itself", "coverage.xml", {{"<ref target=\"#sprint\"", "<ref target=\"#run_sense\""}}, "E-XREF-SELF", 80, 3},
      {"crossref target dangling", "coverage.xml", {{"<ref target=\"#sprint\"", "<ref target=\"#sprints\""}}, "E-REF-DANGLING", 80, 3},
      {"bibliography attached to nothing", "coverage.xml", {{"corresp=\"#run_sense #run\"", "corresp=\"#run_sense #walk\""}},
       "E-REF-DANGLING", 87, 3},
      {"source is not a bibliography", "coverage.xml", {{"source=\"#oed_ref\"", "source=\"#sprint\""}}, "E-REF-KIND", 25, 5},
      {"id is not an NCName", "coverage.xml", {{"xml:id=\"run_away\"", "xml:id=\"2run_away\""}}, "E-PROFILE-VALUE", 36, 5},
      {"pron before orth", "coverage.xml", {{"<orth xml:lang=\"en\">run</orth>\n      <pron>rʌn</pron>", "<pron>rʌn</pron>\n      <orth xml:lang=\"en\">run</orth>"}},
       "E-FORM-PRON", 4, 7},
      {"untyped form", "coverage.xml", {{"<form type=\"lemma\">\n        <orth>runaway", "<form>\n        <orth>runaway"}}, "E-FORM-UNTYPED", 37, 7},
      {"nesting under a non-lemma form", "coverage.xml", {{"<usg type=\"register\">informal</usg>", "<form type=\"variant\"><orth>runnr</orth></form>"}},
       "E-FORM-NESTING", 21, 5},
      {"empty subsense", "coverage.xml", {{"<def>to manage</def>", ""}}, "E-SENSE-EMPTY", 32, 7},
      {"empty definition", "coverage.xml", {{"<def>to run at full speed</def>", "<def></def>"}}, "E-TEXT-EMPTY", 65, 5},
      {"etymon without language", "coverage.xml", {{" xml:id=\"rinnan_gem\" xml:lang=\"gem\"", " xml:id=\"rinnan_gem\""}},
       "E-ETY-LANG", 75, 3},
      {"empty etymology", "coverage.xml", {{"<etym type=\"unknown\">\n        <cit type=\"etymon\" subtype=\"unknown\" n=\"1\" corresp=\"#rinnan_gem\" target=\"#run_sense\">\n          <date>before the Germanic split</date>\n        </cit>\n", "<etym type=\"unknown\">\n"}},
       "E-ETY-EMPTY", 54, 7},
      {"child out of order", "klein-center.xml", {{"<lang>Gk.</lang>\n        <oRef>κέντρον</oRef>", "<oRef>κέντρον</oRef>\n        <lang>Gk.</lang>"}},
       "E-PROFILE-ORDER", 25, 9},
      {"second date on a link", "coverage.xml", {{"<date when=\"-500\">about 500 BC</date>", "<date when=\"-500\">about 500 BC</date><date>later</date>"}},
       "E-PROFILE-CARD", 52, 46},
      {"text inside gramGrp", "coverage.xml", {{"<gramGrp>\n        <tns>", "<gramGrp>oops\n        <tns>"}}, "E-PROFILE-TEXT", 10, 7},
      {"re as document element", "figure3.xml", {{"<entry>\n", "<re type=\"phrase\">\n"}, {"</re>\n</entry>", "</re>\n</re>"}}, "E-PROFILE-ROOT", 1, 1},
      {"foreign namespace", "klein-center.xml", {{"http://www.tei-c.org/ns/1.0", "http://example.org/ns"}}, "E-PROFILE-NS", 2, 1},
      {"declared Latin-1", "klein-center.xml", {{"encoding=\"UTF-8\"", "encoding=\"ISO-8859-1\""}}, "E-XML-ENCODING", 1, 1},
      {"display form disagrees with etymon", "klein-center.xml", {{"<oRef>centrum</oRef>", "<oRef>centron</oRef>"}}, "W-ETY-DISPLAY", 19, 7},
      {"dates run against link order", "coverage.xml", {{"notBefore=\"700\" notAfter=\"1100\"", "notBefore=\"-900\" notAfter=\"-800\""}},
       "W-ETY-DATE", 50, 7},
      {"entry without sense", "dead.xml", {{"  <sense>\n    <def>no longer alive</def>\n  </sense>\n", ""}}, "W-NO-SENSE", 1, 1},
      {"body without language", "coverage.xml", {{"<body xml:lang=\"en\">", "<body>"}}, "W-NO-LANG", 1, 1},
  };
}

std::vector<SourceText> mutated_corpus(const Mutation& m) {
  auto sources = corpus();
  auto it = std::find_if(sources.begin(), sources.end(), [&](const SourceText& s) { return s.path == m.fixture; });
  if (it == sources.end()) throw std::runtime_error("no fixture " + m.fixture);
  for (const auto& [find, replace] : m.edits) {
    const auto at = it->text.find(find);
    if (at == std::string::npos || it->text.find(find, at + 1) != std::string::npos) {
      throw std::runtime_error(m.name + ": edit target missing or ambiguous");
    }
    it->text.replace(at, find.size(), replace);
  }
  return sources;
}

namespace {

const std::vector<std::string> kWords = {"kern", "centre", "dead", "point", "spike", "kéntron", "ʃal", "brú",
                                         "noun", "ox", "goad", "sīts", "hantag", "wall", "earth", "øre"};
const std::vector<std::string> kVerbatimBits = {"a", "é", "ʃ", "κέ", " ", "  ", "&", "<", ">", "\"", "'",
                                                "\t", "\n", "\r", "]]>", "&amp;", "x", "ñ"};
const std::vector<std::string> kLangs = {"en", "fr", "la", "grc", "de-CH", "sga", "x-klein"};
const std::vector<std::string> kElementFeatures = {"pos", "number", "gen", "case", "per", "tns", "mood"};
const std::vector<std::string> kLinkTypes = {"borrowing", "inheritance", "metaphor", "metonymy", "unknown"};
const std::vector<FormClass> kNonLemma = {FormClass::related_form, FormClass::word_form, FormClass::stem,
                                          FormClass::word_part, FormClass::variant, FormClass::inflected};

}  // namespace

std::string EntryGenerator::fresh_id(const std::string& stem) { return stem + "_g" + std::to_string(next_id_++); }

std::string EntryGenerator::word() { return kWords[pick(kWords.size())]; }

std::string EntryGenerator::phrase(std::size_t max_words) {
  std::string out = word();
  for (std::size_t n = range(1, max_words); n > 1; --n) out += " " + word();
  return out;
}

std::string EntryGenerator::verbatim() {
  std::string out;
  for (std::size_t n = range(1, 6); n > 0; --n) out += kVerbatimBits[pick(kVerbatimBits.size())];
  return out;
}

std::string EntryGenerator::lang() { return kLangs[pick(kLangs.size())]; }

GrammaticalFeature EntryGenerator::feature() {
  if (chance(0.5)) return {kElementFeatures[pick(kElementFeatures.size())], phrase(2), FeatureSyntax::element};
  return {word(), phrase(2), FeatureSyntax::gram};
}

Layout EntryGenerator::merge(std::vector<Layout> sequences) {
  Layout out;
  std::vector<std::size_t> pos(sequences.size(), 0);
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      if (pos[i] < sequences[i].size()) open.push_back(i);
    }
    if (open.empty()) return out;
    std::size_t s = open[pick(open.size())];
    out.push_back(sequences[s][pos[s]++]);
  }
}

Layout EntryGenerator::feature_slots(const std::vector<GrammaticalFeature>& fs) {
  Layout out;
  for (std::size_t i = 0; i < fs.size();) {
    if (fs[i].syntax == FeatureSyntax::gram && chance(0.5)) {
      out.push_back({Part::gram, 1});
      ++i;
      continue;
    }
    std::uint32_t k = 1;
    while (i + k < fs.size() && chance(0.5)) ++k;
    out.push_back({Part::gram_grp, k});
    i += k;
  }
  return out;
}

Form EntryGenerator::form(FormClass cls, bool nested) {
  Form f;
  f.form_class = cls;
  if (chance(0.6)) f.id = fresh_id("form");
  Layout reps;
  for (std::size_t n = range(1, 2); n > 0; --n) {
    FormRepresentation r{verbatim(), std::nullopt, std::nullopt};
    reps.push_back({Part::orth});
    if (chance(0.4)) {
      r.pronunciation = verbatim();
      reps.push_back({Part::pron});
    }
    if (chance(0.2)) r.language = lang();
    f.representations.push_back(std::move(r));
  }
  for (std::size_t n = range(0, 3); n > 0; --n) f.grammatical_features.push_back(feature());
  for (std::size_t n = range(0, 2); n > 0; --n) f.usages.push_back(Usage{word(), phrase(2)});
  if (cls == FormClass::lemma && !nested) {
    for (std::size_t n = range(0, 2); n > 0; --n) f.nested_forms.push_back(form(kNonLemma[pick(kNonLemma.size())], true));
  }
  // A pron slot may drift past other slots but never past the next orth.
  std::vector<Layout> units;
  Layout current;
  for (const auto& item : reps) {
    if (item.part == Part::orth && !current.empty()) {
      units.push_back(current);
      current.clear();
    }
    current.push_back(item);
  }
  units.push_back(current);
  Layout others = merge({feature_slots(f.grammatical_features), Layout(f.usages.size(), {Part::usg}),
                         Layout(f.nested_forms.size(), {Part::form})});
  // Interleave: each unit's orth precedes its pron; units stay in order.
  Layout rep_seq;
  for (const auto& u : units) rep_seq.insert(rep_seq.end(), u.begin(), u.end());
  f.layout = merge({rep_seq, others});
  return f;
}

TextRepresentation EntryGenerator::text(TextKind kind) {
  TextRepresentation t;
  t.kind = kind;
  t.text = kind == TextKind::gloss ? phrase() : verbatim();
  if (chance(0.3)) t.language = lang();
  if (kind != TextKind::gloss && chance(0.2)) t.bibliography_refs = {fresh_id("bib"), fresh_id("bib")};
  return t;
}

Sense EntryGenerator::sense(int depth) {
  Sense s;
  if (chance(0.5)) s.id = fresh_id("sense");
  for (std::size_t n = range(0, 2); n > 0; --n) s.definitions.push_back(text(TextKind::definition));
  for (std::size_t n = range(0, 2); n > 0; --n) s.examples.push_back(text(TextKind::example));
  for (std::size_t n = range(0, 1); n > 0; --n) s.glosses.push_back(text(TextKind::gloss));
  for (std::size_t n = range(0, 2); n > 0; --n) s.grammatical_features.push_back(feature());
  if (depth < 2) {
    for (std::size_t n = range(0, 2); n > 0; --n) s.subsenses.push_back(sense(depth + 1));
  }
  if (s.definitions.empty() && s.examples.empty() && s.glosses.empty() && s.subsenses.empty()) {
    s.definitions.push_back(text(TextKind::definition));
  }
  s.layout = merge({feature_slots(s.grammatical_features), Layout(s.definitions.size(), {Part::def}),
                    Layout(s.glosses.size(), {Part::gloss}), Layout(s.examples.size(), {Part::example}),
                    Layout(s.subsenses.size(), {Part::sense})});
  return s;
}

LexicalEntry EntryGenerator::related(const std::vector<std::string>& form_ids) {
  LexicalEntry r;
  r.kind = EntryKind::related;
  if (chance(0.5)) r.id = fresh_id("re");
  if (!form_ids.empty() && chance(0.7)) {
    r.related_type = "multiWordExpression";
    Form f;
    f.type_authored = false;
    f.form_class = FormClass::lemma;
    const std::size_t k = range(1, 4);
    std::vector<std::uint32_t> order(k);
    std::iota(order.begin(), order.end(), 1u);
    std::shuffle(order.begin(), order.end(), rng_);
    for (std::size_t i = 0; i < k; ++i) {
      f.segments.push_back(MweSegment{form_ids[pick(form_ids.size())], order[i], word()});
    }
    f.representations.push_back(FormRepresentation{mwe_surface(f.segments), std::nullopt, std::nullopt});
    f.layout = Layout(k, {Part::seg});
    r.forms.push_back(std::move(f));
  } else {
    static const std::vector<std::string> kTypes = {"compound", "derivative", "phrase"};
    r.related_type = kTypes[pick(kTypes.size())];
    r.forms.push_back(form(FormClass::lemma, true));
  }
  if (chance(0.3)) r.senses.push_back(sense(1));
  return r;
}

EtyLink EntryGenerator::link(std::uint32_t order, const std::string& target) {
  EtyLink l;
  if (chance(0.3)) l.id = fresh_id("link");
  l.link_type = kLinkTypes[pick(kLinkTypes.size())];
  l.order = order;
  for (std::size_t n = range(1, 2); n > 0; --n) l.source_aspects.push_back(fresh_id("etymon"));
  l.target_aspects.push_back(target);
  if (chance(0.3)) l.target_aspects.push_back(fresh_id("aspect"));
  if (chance(0.5)) {
    EtyDate d;
    d.text = phrase(2);
    switch (pick(3)) {
      case 0:
        d.kind = DateKind::point;
        d.year_start = static_cast<std::int64_t>(range(0, 4000)) - 2000;
        break;
      case 1:
        d.kind = DateKind::range;
        if (chance(0.7)) d.year_start = static_cast<std::int64_t>(range(0, 1000)) - 500;
        if (!d.year_start || chance(0.7)) d.year_end = static_cast<std::int64_t>(range(500, 2000));
        break;
      default:
        d.kind = DateKind::relative;
    }
    l.date = d;
  }
  if (chance(0.5)) l.display_lang = phrase(1);
  if (chance(0.5)) {
    l.display_form = verbatim();
    l.display_form_is_oref = chance(0.5);
  }
  if (chance(0.4)) l.display_gloss = phrase();
  return l;
}

Etymology EntryGenerator::etymology(int depth, const std::string& target) {
  Etymology e;
  if (chance(0.4)) e.id = fresh_id("ety");
  e.ety_type = kLinkTypes[pick(kLinkTypes.size())];
  const std::size_t links = range(depth == 1 ? 0 : 1, 3);
  for (std::size_t i = 0; i < links; ++i) e.links.push_back(link(static_cast<std::uint32_t>(i + 1), target));
  if (depth < 3 && (links == 0 || chance(0.5))) {
    for (std::size_t n = range(1, 2); n > 0; --n) e.sub_etymologies.push_back(etymology(depth + 1, target));
  }
  if (e.links.empty() && e.sub_etymologies.empty()) e.links.push_back(link(1, target));
  return e;
}

LexicalEntry EntryGenerator::entry() {
  LexicalEntry e;
  e.id = fresh_id("entry");
  switch (pick(6)) {
    case 0: e.kind = EntryKind::etymon; break;
    case 1: e.kind = EntryKind::cognate; break;
    default: e.kind = EntryKind::standard;
  }
  if (e.kind != EntryKind::standard || chance(0.3)) e.language = lang();
  if (chance(0.2)) e.lang_label = phrase(1) + ".";
  if (chance(0.2)) e.gloss = phrase();
  e.forms.push_back(form(FormClass::lemma, false));
  for (std::size_t n = range(0, 3); n > 0; --n) e.forms.push_back(form(kNonLemma[pick(kNonLemma.size())], false));
  if (pick(2) == 1) std::swap(e.forms.front(), e.forms.back());
  if (e.kind == EntryKind::standard || chance(0.3)) {
    for (std::size_t n = range(1, 3); n > 0; --n) e.senses.push_back(sense(0));
  }
  std::vector<std::string> form_ids;
  for (const auto& f : e.forms) {
    if (f.id) form_ids.push_back(*f.id);
    for (const auto& nf : f.nested_forms) {
      if (nf.id) form_ids.push_back(*nf.id);
    }
  }
  for (std::size_t n = range(0, 2); n > 0; --n) e.related.push_back(related(form_ids));
  if (chance(0.6)) e.etymology = etymology(1, *e.id);
  return e;
}

namespace {

Form gloss_form(const std::string& id, const std::string& orth) {
  Form f;
  f.id = id;
  f.representations.push_back({orth, std::nullopt, std::nullopt});
  return f;
}

}  // namespace

EtyInstance random_ety_instance(std::mt19937_64& rng, std::size_t entries, std::size_t planted) {
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  EtyInstance inst;
  inst.lexicon.language = "en";
  inst.lexicon.language_declared = true;
  for (std::size_t i = 0; i < entries; ++i) {
    inst.ids.push_back("n" + std::to_string(i));
    if (planted > 0) {
      inst.kinds.push_back(chance(0.8) ? EntryKind::etymon : EntryKind::standard);
    } else {
      const double r = std::uniform_real_distribution<double>(0, 1)(rng);
      inst.kinds.push_back(r < 0.55 ? EntryKind::etymon : r < 0.65 ? EntryKind::cognate : EntryKind::standard);
    }
  }

  // Disjoint index bands keep planted cycles in separate components.
  std::vector<std::vector<std::size_t>> cycles;
  const std::size_t band = planted ? entries / planted : 0;
  for (std::size_t c = 0; c < planted; ++c) {
    std::vector<std::size_t> members;
    while (members.size() < 3) {
      std::size_t m = c * band + pick(band);
      if (std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
    }
    std::sort(members.begin(), members.end());
    for (auto m : members) inst.kinds[m] = EntryKind::etymon;
    cycles.push_back(members);
  }

  auto aspect = [&](std::size_t j) {
    switch (pick(3)) {
      case 0: return inst.ids[j];
      case 1: return inst.ids[j] + "_f";
      default: return inst.ids[j] + "_s";
    }
  };

  std::vector<std::vector<EtyLink>> links(entries);
  auto add_link = [&](std::size_t owner, std::vector<std::string> sources, std::vector<std::string> targets) {
    static const std::vector<std::string> kTypes = {"borrowing", "inheritance", "calque", "unknown"};
    EtyLink l;
    l.link_type = kTypes[pick(kTypes.size())];
    l.order = static_cast<std::uint32_t>(links[owner].size() + 1);
    l.source_aspects = std::move(sources);
    l.target_aspects = std::move(targets);
    links[owner].push_back(std::move(l));
  };
  for (std::size_t i = 0; i < entries; ++i) {
    if (!chance(planted ? 0.5 : 0.7)) continue;
    for (std::size_t k = 1 + pick(2); k > 0; --k) {
      std::vector<std::string> targets{aspect(i)};
      if (!planted && chance(0.15)) targets.push_back(aspect(pick(entries)));
      std::vector<std::string> sources;
      for (std::size_t m = 1 + pick(2); m > 0; --m) {
        if (planted) {
          if (i + 1 < entries) sources.push_back(aspect(i + 1 + pick(entries - i - 1)));
        } else {
          sources.push_back(aspect(pick(entries)));
        }
      }
      if (sources.empty()) continue;
      add_link(i, std::move(sources), std::move(targets));
    }
  }
  for (const auto& c : cycles) {
    add_link(c[0], {aspect(c[1])}, {aspect(c[0])});
    add_link(c[1], {aspect(c[2])}, {aspect(c[1])});
    add_link(c[2], {aspect(c[0])}, {aspect(c[2])});
  }

  auto owner = [&](const std::string& id) {
    return static_cast<std::size_t>(std::stoul(id.substr(1, id.find('_') == std::string::npos ? std::string::npos
                                                                                              : id.find('_') - 1)));
  };
  for (std::size_t i = 0; i < entries; ++i) {
    LexicalEntry e;
    e.id = inst.ids[i];
    e.kind = inst.kinds[i];
    if (e.kind != EntryKind::standard) e.language = e.kind == EntryKind::etymon ? "la" : "bre";
    e.forms.push_back(gloss_form(inst.ids[i] + "_f", "w" + std::to_string(i)));
    Sense s;
    s.id = inst.ids[i] + "_s";
    s.glosses.push_back({"gloss " + std::to_string(i), TextKind::gloss, std::nullopt, {}});
    e.senses.push_back(s);
    inst.has_etymology.push_back(!links[i].empty());
    if (!links[i].empty()) {
      Etymology ety;
      ety.ety_type = "unknown";
      ety.links = links[i];
      if (chance(0.2)) {
        // Degenerate nesting: an empty container around one sub-etymology.
        Etymology outer;
        outer.ety_type = "unknown";
        outer.sub_etymologies.push_back(std::move(ety));
        ety = std::move(outer);
      }
      e.etymology = std::move(ety);
    }
    for (const auto& l : links[i]) {
      for (const auto& t : l.target_aspects) {
        for (const auto& src : l.source_aspects) {
          if (inst.kinds[owner(src)] != EntryKind::etymon) continue;
          inst.edges.push_back({owner(t), owner(src), l.link_type});
        }
      }
    }
    inst.lexicon.entries.push_back(std::move(e));
  }
  return inst;
}

ChainOracle brute_force_chain(const EtyInstance& inst, std::size_t start) {
  std::optional<std::vector<std::size_t>> best;
  bool best_cyclic = false;
  std::vector<std::size_t> seq;
  std::vector<bool> visited(inst.ids.size(), false);

  auto offer = [&](bool cyclic) {
    if (!best || seq < *best) {
      best = seq;
      best_cyclic = cyclic;
    }
  };
  auto dfs = [&](auto&& self, std::size_t node) -> void {
    bool any = false;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      if (inst.edges[e].from != node) continue;
      any = true;
      seq.push_back(e);
      const std::size_t to = inst.edges[e].to;
      if (visited[to]) {
        offer(true);
      } else {
        visited[to] = true;
        self(self, to);
        visited[to] = false;
      }
      seq.pop_back();
    }
    if (!any) offer(false);
  };
  visited[start] = true;
  dfs(dfs, start);

  ChainOracle out;
  out.cyclic = best_cyclic;
  for (std::size_t k = 0; k < best->size(); ++k) {
    if (best_cyclic && k + 1 == best->size()) break;
    const auto& e = inst.edges[(*best)[k]];
    out.steps.emplace_back(e.type, inst.ids[e.to]);
  }
  return out;
}

std::vector<std::vector<std::string>> closure_cycles(const EtyInstance& inst) {
  const std::size_t n = inst.ids.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& e : inst.edges) reach[e.from][e.to] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<bool> taken(n, false);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (taken[i] || !reach[i][i]) continue;
    std::vector<std::string> comp;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) {
        taken[j] = true;
        comp.push_back(inst.ids[j]);
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// Figure 3 written out by hand as a model value.
lmfkit::LexicalEntry figure3_expected() {
  using namespace lmfkit;
  using P = Part;
  Form variant;
  variant.form_class = FormClass::variant;
  variant.representations = {{"centre", "'sentə", std::nullopt}};
  variant.usages = {{"geo", "U.K"}};
  variant.layout = {{P::orth}, {P::usg}, {P::pron}};

  Form lemma;
  lemma.id = "center_form";
  lemma.form_class = FormClass::lemma;
  lemma.representations = {{"center", "'sentʃ", std::nullopt}};
  lemma.grammatical_features = {{"pos", "noun", FeatureSyntax::element}};
  lemma.usages = {{"geo", "U.S"}};
  lemma.nested_forms = {variant};
  lemma.layout = {{P::orth}, {P::pron}, {P::gram_grp, 1}, {P::usg}, {P::form}};

  Form centers;
  centers.form_class = FormClass::inflected;
  centers.representations = {{"centers", std::nullopt, std::nullopt}};
  centers.usages = {{"geo", "U.S"}};
  centers.grammatical_features = {{"number", "plural", FeatureSyntax::element}};
  centers.layout = {{P::orth}, {P::usg}, {P::gram_grp, 1}};

  Form centres = centers;
  centres.representations = {{"centres", std::nullopt, std::nullopt}};
  centres.usages = {{"geo", "U.K"}};
  centres.grammatical_features = {{"number", "plural", FeatureSyntax::gram}};
  centres.layout = {{P::orth}, {P::usg}, {P::gram, 1}};

  Sense s1;
  s1.definitions = {{"the point around which a circle or sphere is described", TextKind::definition, {}, {}}};
  s1.examples = {{"earth center", TextKind::example, {}, {}}};
  s1.layout = {{P::def}, {P::example}};

  Sense s2;
  s2.grammatical_features = {{"pos", "verb", FeatureSyntax::element}};
  s2.definitions = {{"place in the middle", TextKind::definition, {}, {}}};
  s2.examples = {{"center the picture on the wall", TextKind::example, {}, {}}};
  s2.layout = {{P::gram_grp, 1}, {P::def}, {P::example}};

  Form mwe;
  mwe.type_authored = false;
  mwe.segments = {{"dead_form", 1, "dead"}, {"center_form", 2, "center"}};
  mwe.representations = {{"dead center", std::nullopt, std::nullopt}};
  mwe.layout = {{P::seg}, {P::seg}};

  LexicalEntry re;
  re.kind = EntryKind::related;
  re.related_type = "multiWordExpression";
  re.forms = {mwe};

  LexicalEntry e;
  e.forms = {lemma, centers, centres};
  e.senses = {s1, s2};
  e.related = {re};
  return e;
}

namespace {

// Composition for the handful of decomposed spellings the lookup pool uses.
std::string composed(std::string s) {
  const std::vector<std::pair<std::string, std::string>> table = {
      {"e\xCC\x81", "\xC3\xA9"}, {"\xCE\xB5\xCC\x81", "\xCE\xAD"}, {"\xE1\xBD\xB3", "\xCE\xAD"}};
  for (const auto& [from, to] : table) {
    for (auto at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
      s.replace(at, from.size(), to);
    }
  }
  return s;
}

}  // namespace

const std::vector<std::string> kHeadwords = {
    "center", "Center", "centre", "caf\xC3\xA9", "cafe\xCC\x81", "\xCE\xBA\xCE\xAD\xCE\xBD\xCF\x84\xCF\x81\xCE\xBF\xCE\xBD",
    "\xCE\xBA\xCE\xB5\xCC\x81\xCE\xBD\xCF\x84\xCF\x81\xCE\xBF\xCE\xBD", "\xCE\xBA\xE1\xBD\xB3\xCE\xBD\xCF\x84\xCF\x81\xCE\xBF\xCE\xBD",
    "run"};

std::vector<lmfkit::EntrySummary> linear_scan(const std::vector<lmfkit::Lexicon>& lexicons, const std::string& headword) {
  using namespace lmfkit;
  std::vector<lmfkit::EntrySummary> out;
  for (std::size_t l = 0; l < lexicons.size(); ++l) {
    for (std::size_t j = 0; j < lexicons[l].entries.size(); ++j) {
      const auto& e = lexicons[l].entries[j];
      if (e.kind != EntryKind::standard) continue;
      const Form* lemma = nullptr;
      for (const auto& f : e.forms) {
        if (f.form_class == FormClass::lemma) lemma = &f;
      }
      bool hit = false;
      for (const auto& r : lemma->representations) hit = hit || composed(r.orthography) == composed(headword);
      if (!hit) continue;
      EntrySummary s;
      s.id = e.id;
      s.handle = e.id ? *e.id : "lexicon[" + std::to_string(l) + "]/entry[" + std::to_string(j) + "]";
      s.language = e.language.value_or(lexicons[l].language);
      s.lemma = lemma->representations.front().orthography;
      s.sense_count = e.senses.size();
      out.push_back(s);
    }
  }
  return out;
}

std::vector<lmfkit::Lexicon> random_lexicons(std::mt19937_64& rng) {
  using namespace lmfkit;
  std::vector<Lexicon> out(1 + rng() % 3);
  std::size_t next = 0;
  for (auto& lex : out) {
    lex.language = rng() % 2 ? "en" : "fr";
    for (std::size_t n = rng() % 6; n > 0; --n) {
      LexicalEntry e;
      if (rng() % 3) e.id = "x" + std::to_string(next++);
      e.kind = rng() % 4 ? EntryKind::standard : EntryKind::etymon;
      if (e.kind == EntryKind::etymon || rng() % 3 == 0) e.language = "la";
      Form f;
      for (std::size_t k = 1 + rng() % 2; k > 0; --k) {
        f.representations.push_back({kHeadwords[rng() % kHeadwords.size()], std::nullopt, std::nullopt});
      }
      e.forms.push_back(f);
      for (std::size_t k = rng() % 3; k > 0; --k) {
        Sense s;
        s.glosses.push_back({"g", TextKind::gloss, std::nullopt, {}});
        e.senses.push_back(s);
      }
      lex.entries.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace testing_support
