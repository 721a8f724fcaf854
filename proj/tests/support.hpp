#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/model.hpp"
#include "lmfkit/store.hpp"

namespace testing_support {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

// Figure 3 written out by hand as a model value.
lmfkit::LexicalEntry figure3_expected();

// Every fixture in the corpus, sorted by name.
std::vector<std::string> fixture_names();

// The fixture corpus as in-memory sources, sorted by name.
std::vector<lmfkit::SourceText> corpus();

// One seeded fault: textual edits to a fixture, and the single diagnostic the
// edited corpus must report beyond the clean corpus.
struct Mutation {
  std::string name;
  std::string fixture;
  std::vector<std::pair<std::string, std::string>> edits;  // find (unique) -> replace
  std::string code;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::vector<Mutation> fault_suite();

// The corpus with `m` applied; throws when a find string is absent or
// ambiguous.
std::vector<lmfkit::SourceText> mutated_corpus(const Mutation& m);

// Random valid entries for round-trip properties: nested forms, multiword
// related entries, recursive etymologies up to depth 3, shuffled child
// layouts, verbatim text with markup characters and non-ASCII letters.
class EntryGenerator {
 public:
  explicit EntryGenerator(std::uint64_t seed) : rng_(seed) {}

  lmfkit::LexicalEntry entry();

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::size_t range(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string fresh_id(const std::string& stem);
  std::string word();
  std::string phrase(std::size_t max_words = 3);
  std::string verbatim();
  std::string lang();

  lmfkit::GrammaticalFeature feature();
  lmfkit::Form form(lmfkit::FormClass cls, bool nested);
  lmfkit::Sense sense(int depth);
  lmfkit::TextRepresentation text(lmfkit::TextKind kind);
  lmfkit::LexicalEntry related(const std::vector<std::string>& form_ids);
  lmfkit::Etymology etymology(int depth, const std::string& target);
  lmfkit::EtyLink link(std::uint32_t order, const std::string& target);

  // Random interleaving that keeps the order inside each sequence.
  lmfkit::Layout merge(std::vector<lmfkit::Layout> sequences);
  lmfkit::Layout feature_slots(const std::vector<lmfkit::GrammaticalFeature>& fs);

  std::mt19937_64 rng_;
  std::size_t next_id_ = 0;
};

// A random lexicon whose etymologies draw aspects from entries, forms and
// senses of other entries. The generator keeps its own owner table, so the
// entry -> etymon edges below come from the raw links, not the library.
struct EtyInstance {
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string type;
  };

  lmfkit::Lexicon lexicon;
  std::vector<std::string> ids;  // entry ids, document order
  std::vector<lmfkit::EntryKind> kinds;
  std::vector<bool> has_etymology;
  // Link document order, then target aspect, then source aspect.
  std::vector<Edge> edges;
};

// `entries` random entries. With `planted` > 0 the links only point forward
// (a DAG) and that many disjoint three-member cycles are added on top.
EtyInstance random_ety_instance(std::mt19937_64& rng, std::size_t entries, std::size_t planted = 0);

struct ChainOracle {
  bool cyclic = false;
  // (link type, etymon id) per step.
  std::vector<std::pair<std::string, std::string>> steps;
};

// Enumerates every walk from `start` and keeps the one whose edge sequence is
// lexicographically smallest: the walk that takes the first link at each
// step. A walk ends at a sink or on an edge back into itself.
ChainOracle brute_force_chain(const EtyInstance& inst, std::size_t start);

// Cyclic strongly connected components from a Floyd-Warshall reachability
// closure, members by document order, components by first member.
std::vector<std::vector<std::string>> closure_cycles(const EtyInstance& inst);

// Headwords for lookup properties, with composed and decomposed spellings of
// the same words.
extern const std::vector<std::string> kHeadwords;

// Random lexicons whose lemmas draw on kHeadwords.
std::vector<lmfkit::Lexicon> random_lexicons(std::mt19937_64& rng);

// Lookup by scanning every top-level entry, composing by table.
std::vector<lmfkit::EntrySummary> linear_scan(const std::vector<lmfkit::Lexicon>& lexicons, const std::string& headword);

}  // namespace testing_support
