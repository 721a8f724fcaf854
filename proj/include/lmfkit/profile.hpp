#pragma once

// Constraint profile for the TEI serialization: which elements and
// attributes may appear, their value kinds and the containment rules. The
// profile is data; see profiles/tei-lmf.profile for the file format.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lmfkit {

enum class AttrKind { id, idref, idrefs, lang, token, posint, year, enumeration, text };

struct AttrRule {
  std::string name;
  AttrKind kind = AttrKind::text;
  bool required = false;
  std::vector<std::string> values;  // enumeration only
};

enum class ContentKind { text, verbatim, empty, children };

struct ChildGroup {
  std::vector<std::string> keys;  // rule keys, e.g. "orth" or "cit[etymon]"
  std::size_t min = 1;
  std::optional<std::size_t> max = 1;
};

struct ElementRule {
  std::string name;
  std::optional<std::string> variant;  // @type value selecting this rule
  std::vector<AttrRule> attributes;    // canonical order
  ContentKind content = ContentKind::empty;
  bool ordered = false;
  std::vector<ChildGroup> children;

  std::string key() const { return variant ? name + "[" + *variant + "]" : name; }
  const AttrRule* attribute(std::string_view attr) const;
};

struct SerializationProfile {
  std::string ns;
  std::vector<std::string> roots;
  std::vector<ElementRule> elements;

  bool knows(std::string_view element) const;
  // Rule for an element given its @type (variants first, then the plain
  // rule); null when no rule applies.
  const ElementRule* rule_for(std::string_view element, const std::string* type) const;
  const ElementRule* rule(std::string_view key) const;
};

class ProfileError : public std::runtime_error {
 public:
  ProfileError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

SerializationProfile parse_profile(std::string_view text);
SerializationProfile load_profile(const std::string& path);

// The profile shipped in profiles/tei-lmf.profile, compiled in.
const SerializationProfile& default_profile();
std::string_view default_profile_text();

}  // namespace lmfkit
