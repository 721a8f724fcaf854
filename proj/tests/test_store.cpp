#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <random>

#include "lmfkit/store.hpp"
#include "lmfkit/tei.hpp"
#include "support.hpp"

using namespace lmfkit;
using testing_support::corpus;
using testing_support::kHeadwords;
using testing_support::linear_scan;
using testing_support::random_lexicons;

namespace {

Store corpus_store() {
  auto r = ingest_texts(corpus());
  if (!r.store) throw std::runtime_error(render_text(r.report));
  return *r.store;
}

}  // namespace

TEST(Store, IngestMergesFilesInPathOrder) {
  auto sources = corpus();
  std::reverse(sources.begin(), sources.end());
  auto r = ingest_texts(sources);
  ASSERT_TRUE(r.store);
  const auto& files = r.store->source_files();
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[0].path, "coverage.xml");
  EXPECT_EQ(files[1].path, "dead.xml");
  EXPECT_EQ(files[1].sha256, "2d6f528836c45df5c01926c93f1712f39c8cb057d8123a70ec6b7ad16c1284dd");
  EXPECT_EQ(r.store->resource().lexicons().size(), 4u);
  EXPECT_EQ(r.store->resource().lexicons()[2].entries[0].related[0].forms[0].segments[0].corresp, "dead_form");
  EXPECT_EQ(r.store->source_map().at("lexicon[2]/entry[0]/re[0]/form[0]"), (SourceLocation{"figure3.xml", 43, 5}));
}

TEST(Store, IngestReadsFilesAndHashes) {
  std::vector<std::string> paths;
  for (const auto& name : testing_support::fixture_names()) paths.push_back(testing_support::fixture_path(name));
  auto r = ingest(paths);
  ASSERT_TRUE(r.store) << render_text(r.report);
  EXPECT_EQ(r.store->source_files()[1].sha256, "2d6f528836c45df5c01926c93f1712f39c8cb057d8123a70ec6b7ad16c1284dd");
  EXPECT_THROW(ingest({"/nonexistent/file.xml"}), IoError);
}

TEST(Store, CrossFileDuplicateCitesBothFiles) {
  auto sources = corpus();
  for (auto& s : sources) {
    if (s.path == "dead.xml") s.text.replace(s.text.find("xml:id=\"dead\""), 13, "xml:id=\"run\"");
  }
  auto r = ingest_texts(sources);
  EXPECT_FALSE(r.store);
  ASSERT_EQ(r.report.errors, 1u);
  auto d = *std::find_if(r.report.diagnostics.begin(), r.report.diagnostics.end(),
                         [](const Diagnostic& x) { return x.severity == Severity::error; });
  EXPECT_EQ(d.code, "E-ID-DUP");
  EXPECT_EQ(d.location->file, "dead.xml");
  EXPECT_NE(d.message.find("coverage.xml:2:3"), std::string::npos) << d.message;
}

TEST(Store, LookupByHeadword) {
  Store s = corpus_store();
  auto hits = lookup(s, "center");
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].handle, "lexicon[2]/entry[0]");
  EXPECT_EQ(hits[0].sense_count, 2u);
  EXPECT_EQ(hits[1].handle, "center_klein");
  EXPECT_EQ(hits[1].language, "en");
  // Etymons are not headwords; lookup is case-sensitive.
  EXPECT_TRUE(lookup(s, "centrum").empty());
  EXPECT_TRUE(lookup(s, "Center").empty());
}

TEST(Store, LookupMatchesLinearScan) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    auto lexicons = random_lexicons(rng);
    Store s(build_resource(lexicons));
    for (const auto& w : kHeadwords) ASSERT_EQ(lookup(s, w), linear_scan(lexicons, w)) << w;
  }
}

TEST(Store, NfcComposes) {
  EXPECT_EQ(nfc("cafe\xCC\x81"), "caf\xC3\xA9");
  EXPECT_EQ(nfc("\xE1\xBD\xB3"), "\xCE\xAD");
  EXPECT_EQ(nfc("Center"), "Center");
}

TEST(Store, EtymTraceRendersKlein) {
  Store s = corpus_store();
  EXPECT_EQ(etym_trace(s, "center"),
            "center \xE2\x86\x90(borrowing)\xE2\x86\x90 centre [fr] \xE2\x86\x90(inheritance)\xE2\x86\x90 centrum [la] "
            "\xE2\x86\x90(inheritance)\xE2\x86\x90 \xCE\xBA\xCE\xAD\xCE\xBD\xCF\x84\xCF\x81\xCE\xBF\xCE\xBD [grc] "
            "'point, prickle, spike, ox goad, point round which a circle is described'");
  EXPECT_THROW(etym_trace(s, "sprint"), QueryError);
  EXPECT_THROW(etym_trace(s, "zzz"), QueryError);
}

TEST(Store, JsonExportRoundTrips) {
  Store s = corpus_store();
  const std::string json = export_json(s);
  auto j = nlohmann::json::parse(json);
  EXPECT_EQ(j["format"], "lmfkit-json/1");
  Store back = import_json(json);
  EXPECT_TRUE(back.resource() == s.resource());
  EXPECT_EQ(export_json(back), json);
  EXPECT_EQ(back.lemma_index(), s.lemma_index());
  EXPECT_THROW(import_json("{not json"), std::invalid_argument);
}

TEST(Store, ExportRefusesInvalidStores) {
  Store s = corpus_store();
  Store bad(s.resource(), {}, {}, ValidationReport({make_diagnostic("E-ID-DUP", "x")}));
  try {
    export_json(bad);
    FAIL();
  } catch (const LmfError& e) {
    EXPECT_EQ(e.code(), "E-EXPORT-INVALID");
  }
}

TEST(Store, PermutedInputsGiveIdenticalOutputs) {
  const auto base = corpus();
  auto first = ingest_texts(base);
  ASSERT_TRUE(first.store);
  const std::string json = export_json(*first.store);
  const std::string report = render_json(first.report);
  auto perm = base;
  std::sort(perm.begin(), perm.end(), [](const SourceText& a, const SourceText& b) { return a.path < b.path; });
  do {
    auto r = ingest_texts(perm);
    ASSERT_TRUE(r.store);
    ASSERT_EQ(export_json(*r.store), json);
    ASSERT_EQ(render_json(r.report), report);
  } while (std::next_permutation(perm.begin(), perm.end(),
                                 [](const SourceText& a, const SourceText& b) { return a.path < b.path; }));
}

// Full-scan oracle over the nested model.
TEST(Store, StatsMatchFullScan) {
  Store s = corpus_store();
  StatsReport want;
  std::function<void(const Form&)> form = [&](const Form& f) {
    ++want.forms_by_class[std::string(to_string(f.form_class))];
    for (const auto& n : f.nested_forms) form(n);
  };
  std::function<void(const Sense&)> sense = [&](const Sense& x) {
    ++want.senses;
    for (const auto& n : x.subsenses) sense(n);
  };
  std::function<void(const Etymology&)> ety = [&](const Etymology& e) {
    ++want.etymologies;
    for (const auto& l : e.links) ++want.links_by_type[l.link_type];
    for (const auto& sub : e.sub_etymologies) ety(sub);
  };
  std::function<void(const LexicalEntry&)> entry = [&](const LexicalEntry& e) {
    ++want.entries_by_kind[std::string(to_string(e.kind))];
    for (const auto& f : e.forms) {
      form(f);
      if (!f.segments.empty()) ++want.mwes;
    }
    for (const auto& x : e.senses) sense(x);
    for (const auto& r : e.related) entry(r);
    if (e.etymology) ety(*e.etymology);
  };
  for (const auto& lex : s.resource().lexicons()) {
    for (const auto& e : lex.entries) entry(e);
  }
  want.diagnostics_by_severity = {{"error", 0}, {"info", 1}, {"warning", 0}};
  EXPECT_EQ(stats(s), want);
  auto j = nlohmann::json::parse(render_json(stats(s)));
  EXPECT_EQ(j["senses"], want.senses);
}
