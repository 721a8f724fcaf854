#pragma once

#include <string>
#include <vector>

#include "lmfkit/diagnostics.hpp"
#include "lmfkit/profile.hpp"
#include "xml.hpp"

namespace lmfkit::detail {

// One E-PROFILE-* diagnostic per violation, located at the offending element.
std::vector<Diagnostic> check_tree(const xml::Element& root, const SerializationProfile& profile,
                                   const std::string& file);

// Canonical bytes of a conformant tree: 2-space indentation, one element per
// line, attributes in profile order with collapsed values, text collapsed
// except in verbatim elements. The namespace is declared on the top element
// when `declare_ns`; a trailing newline ends the output.
std::string write_canonical(const xml::Element& root, const SerializationProfile& profile, bool declare_ns);

// Value-shape test for an attribute kind (on the collapsed value).
bool valid_value(const AttrRule& rule, std::string_view value);

}  // namespace lmfkit::detail
