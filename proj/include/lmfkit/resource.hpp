#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/model.hpp"

namespace lmfkit {

using NodeRef = std::variant<const LexicalEntry*, const Form*, const Sense*, const Etymology*, const EtyLink*,
                             const CrossRef*, const Bibliography*>;

std::string_view node_kind(const NodeRef& node);

// Where a node sits in its resource. `path` is a positional handle such as
// "lexicon[0]/entry[1]/form[0]" that also addresses nodes without ids; `seq`
// is the pre-order position (document order).
struct NodeInfo {
  NodeRef node;
  std::string path;
  std::size_t seq = 0;
  std::optional<std::size_t> lexicon;
  // Nearest enclosing entry (the node itself for entries); null for
  // resource-level crossrefs and bibliographies.
  const LexicalEntry* entry = nullptr;
  // Enclosing node, if any.
  std::optional<NodeRef> parent;
};

// Failure of a model query (lookup miss, missing etymology, ...), as opposed
// to a model constraint violation (LmfError).
class QueryError : public std::runtime_error {
 public:
  enum class Kind { not_found, no_etymology, not_an_mwe, cyclic_etymology };

  QueryError(Kind kind, std::string subject, std::vector<std::string> nodes = {});

  Kind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }
  // Cycle members for cyclic_etymology.
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }

 private:
  Kind kind_;
  std::string subject_;
  std::vector<std::string> nodes_;
};

// Node path -> authored source position.
using SourceMap = std::map<std::string, SourceLocation>;

// Immutable lexical resource. Copies share the underlying data, so node
// pointers obtained from one copy stay valid while any copy is alive.
class LexicalResource {
 public:
  LexicalResource();

  const std::vector<Lexicon>& lexicons() const;
  const std::vector<CrossRef>& crossrefs() const;
  const std::vector<Bibliography>& bibliographies() const;

  const std::map<NodeId, NodeInfo>& id_index() const;
  const NodeInfo* find(std::string_view id) const;

  // Bibliography ids whose attached_to names `id`, in registration order.
  std::span<const NodeId> bibliographies_of(std::string_view id) const;

  // Every node in document order.
  std::span<const NodeInfo> nodes() const;

  // Model equality (lexicons, crossrefs, bibliographies).
  friend bool operator==(const LexicalResource& a, const LexicalResource& b);

 // Shared immutable payload; opaque outside the library.
  struct Data;

 private:
  explicit LexicalResource(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;

  friend LexicalResource build_resource(std::vector<Lexicon>, std::vector<CrossRef>, std::vector<Bibliography>);
};

// Validates and indexes the inputs. Empty layouts are filled with defaults.
// Throws LmfError carrying the first error diagnostic in document order
// (E-ID-DUP, E-REF-DANGLING, E-LEMMA-MISSING, ...). Etymon cycles do not
// block construction; check_acyclic and validate_resource report them.
LexicalResource build_resource(std::vector<Lexicon> lexicons, std::vector<CrossRef> crossrefs = {},
                               std::vector<Bibliography> bibliographies = {});

// Target nodes of `ref` ordered by order index. Throws LmfError
// (E-REF-DANGLING) when a target id is not indexed.
std::vector<NodeInfo> resolve(const LexicalResource& resource, const CrossRef& ref);

// New resource with `bib` registered; `resource` is left untouched.
LexicalResource attach_bibliography(const LexicalResource& resource, Bibliography bib);

// CrossRef view of the segments of a multiword form (ref_type mwe_component,
// source = the related entry id when it has one).
CrossRef mwe_crossref(const LexicalEntry& related);

}  // namespace lmfkit
