#include "lmfkit/profile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "conform.hpp"
#include "lmfkit/model.hpp"
#include "utf8.hpp"

namespace lmfkit {

const AttrRule* ElementRule::attribute(std::string_view attr) const {
  for (const auto& a : attributes) {
    if (a.name == attr) return &a;
  }
  return nullptr;
}

bool SerializationProfile::knows(std::string_view element) const {
  return std::any_of(elements.begin(), elements.end(), [&](const ElementRule& r) { return r.name == element; });
}

const ElementRule* SerializationProfile::rule_for(std::string_view element, const std::string* type) const {
  const ElementRule* plain = nullptr;
  for (const auto& r : elements) {
    if (r.name != element) continue;
    if (!r.variant) plain = &r;
    else if (type && *r.variant == utf8::collapse_whitespace(*type)) return &r;
  }
  return plain;
}

const ElementRule* SerializationProfile::rule(std::string_view key) const {
  for (const auto& r : elements) {
    if (r.key() == key) return &r;
  }
  return nullptr;
}

ProfileError::ProfileError(std::size_t line, const std::string& what)
    : std::runtime_error("profile line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

const std::map<std::string_view, AttrKind> kAttrKinds = {
    {"id", AttrKind::id},         {"idref", AttrKind::idref},   {"idrefs", AttrKind::idrefs},
    {"lang", AttrKind::lang},     {"token", AttrKind::token},   {"posint", AttrKind::posint},
    {"year", AttrKind::year},     {"enum", AttrKind::enumeration}, {"text", AttrKind::text},
};

ChildGroup parse_group(std::string token, std::size_t line) {
  ChildGroup g;
  if (!token.empty() && (token.back() == '?' || token.back() == '*' || token.back() == '+')) {
    switch (token.back()) {
      case '?': g.min = 0; g.max = 1; break;
      case '*': g.min = 0; g.max = std::nullopt; break;
      default: g.min = 1; g.max = std::nullopt; break;
    }
    token.pop_back();
  }
  std::stringstream ss(token);
  std::string key;
  while (std::getline(ss, key, '|')) {
    if (key.empty()) throw ProfileError(line, "empty alternative in child group");
    g.keys.push_back(key);
  }
  if (g.keys.empty()) throw ProfileError(line, "empty child group");
  return g;
}

}  // namespace

SerializationProfile parse_profile(std::string_view text) {
  SerializationProfile p;
  ElementRule* current = nullptr;
  std::vector<std::size_t> content_lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  std::map<std::string, std::size_t> declared_at;
  while (std::getline(in, raw)) {
    ++line;
    auto words = utf8::split_space(raw);
    if (words.empty() || words[0][0] == '#') continue;
    const std::string& head = words[0];
    if (head == "namespace") {
      if (words.size() != 2) throw ProfileError(line, "namespace takes one URI");
      p.ns = words[1];
    } else if (head == "root") {
      p.roots.insert(p.roots.end(), words.begin() + 1, words.end());
    } else if (head == "element") {
      if (words.size() != 2) throw ProfileError(line, "element takes one name");
      ElementRule r;
      const std::string& spec = words[1];
      if (auto open = spec.find('['); open != std::string::npos) {
        if (spec.back() != ']') throw ProfileError(line, "unterminated variant in " + spec);
        r.name = spec.substr(0, open);
        r.variant = spec.substr(open + 1, spec.size() - open - 2);
      } else {
        r.name = spec;
      }
      if (!declared_at.emplace(r.key(), line).second) throw ProfileError(line, "duplicate element " + r.key());
      p.elements.push_back(std::move(r));
      current = &p.elements.back();
    } else if (!current) {
      throw ProfileError(line, "'" + head + "' outside an element block");
    } else if (head == "attr") {
      // attr [!]NAME : KIND [VALUE...]
      if (words.size() < 4 || words[2] != ":") throw ProfileError(line, "expected: attr [!]NAME : KIND [VALUE...]");
      AttrRule a;
      a.name = words[1];
      if (a.name.starts_with("!")) {
        a.required = true;
        a.name.erase(0, 1);
      }
      auto kind = kAttrKinds.find(words[3]);
      if (kind == kAttrKinds.end()) throw ProfileError(line, "unknown attribute kind " + words[3]);
      a.kind = kind->second;
      a.values.assign(words.begin() + 4, words.end());
      if ((a.kind == AttrKind::enumeration) == a.values.empty()) {
        throw ProfileError(line, "values are required for enum attributes and only for them");
      }
      if (current->attribute(a.name)) throw ProfileError(line, "duplicate attribute " + a.name);
      current->attributes.push_back(std::move(a));
    } else if (head == "text" || head == "verbatim" || head == "empty") {
      if (words.size() != 1) throw ProfileError(line, head + " takes no arguments");
      current->content = head == "text" ? ContentKind::text : head == "verbatim" ? ContentKind::verbatim : ContentKind::empty;
      content_lines.push_back(line);
    } else if (head == "children") {
      current->content = ContentKind::children;
      std::size_t i = 1;
      if (i < words.size() && words[i] == "ordered") {
        current->ordered = true;
        ++i;
      }
      for (; i < words.size(); ++i) current->children.push_back(parse_group(words[i], line));
      content_lines.push_back(line);
    } else {
      throw ProfileError(line, "unknown directive " + head);
    }
  }
  if (p.roots.empty()) throw ProfileError(line, "no root elements declared");
  for (const auto& r : p.elements) {
    for (const auto& g : r.children) {
      for (const auto& k : g.keys) {
        if (!p.rule(k)) throw ProfileError(declared_at[r.key()], r.key() + " names undeclared child " + k);
      }
    }
    if (r.variant) {
      const AttrRule* type = r.attribute("type");
      if (!type || !type->required) throw ProfileError(declared_at[r.key()], r.key() + " needs a required @type");
    }
  }
  for (const auto& root : p.roots) {
    if (!p.rule(root)) throw ProfileError(line, "root " + root + " has no element rule");
  }
  return p;
}

SerializationProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read profile " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str());
}

const SerializationProfile& default_profile() {
  static const SerializationProfile profile = parse_profile(default_profile_text());
  return profile;
}

namespace detail {

namespace {

bool digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool idref(std::string_view s) { return s.size() > 1 && s[0] == '#' && is_ncname(s.substr(1)); }

bool lang_tag(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = 0;
  bool first = true;
  while (start <= s.size()) {
    auto end = s.find('-', start);
    if (end == std::string_view::npos) end = s.size();
    auto sub = s.substr(start, end - start);
    if (sub.empty() || sub.size() > 8) return false;
    for (char c : sub) {
      bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      if (!alpha && !(c >= '0' && c <= '9' && !first)) return false;
    }
    first = false;
    start = end + 1;
    if (end == s.size()) break;
  }
  return true;
}

}  // namespace

bool valid_value(const AttrRule& rule, std::string_view v) {
  switch (rule.kind) {
    case AttrKind::id:
      return is_ncname(v);
    case AttrKind::idref:
      return idref(v);
    case AttrKind::idrefs: {
      auto parts = utf8::split_space(v);
      return !parts.empty() && std::all_of(parts.begin(), parts.end(), [](const std::string& p) { return idref(p); });
    }
    case AttrKind::lang:
      return lang_tag(v);
    case AttrKind::token:
      return !v.empty() && v.find(' ') == std::string_view::npos;
    case AttrKind::posint: {
      std::uint32_t n = 0;
      auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
      return digits(v) && v[0] != '0' && ec == std::errc{} && end == v.data() + v.size();
    }
    case AttrKind::year: {
      auto body = v.starts_with('-') ? v.substr(1) : v;
      if (!digits(body) || body.size() > 12) return false;
      if (body[0] == '0') return body.size() == 1 && v.size() == 1;
      return true;
    }
    case AttrKind::enumeration:
      return std::find(rule.values.begin(), rule.values.end(), v) != rule.values.end();
    case AttrKind::text:
      return true;
  }
  return false;
}

namespace {

class TreeChecker {
 public:
  TreeChecker(const SerializationProfile& profile, const std::string& file) : profile_(profile), file_(file) {}

  std::vector<Diagnostic> run(const xml::Element& root) {
    const ElementRule* rule = resolve(root);
    if (rule && std::find(profile_.roots.begin(), profile_.roots.end(), rule->key()) == profile_.roots.end()) {
      emit(root, "E-PROFILE-ROOT", "<" + root.name + "> cannot be the document element");
      return std::move(out_);
    }
    if (rule) element(root, *rule);
    return std::move(out_);
  }

 private:
  void emit(const xml::Element& at, std::string_view code, std::string message) {
    out_.push_back(make_diagnostic(code, std::move(message), std::nullopt, SourceLocation{file_, at.line, at.column}));
  }

  // Rule for an element or a diagnostic explaining why there is none.
  const ElementRule* resolve(const xml::Element& e) {
    if (e.name.find(':') != std::string::npos || !profile_.knows(e.name)) {
      emit(e, "E-PROFILE-ELEMENT", "<" + e.name + "> is not in the profile");
      return nullptr;
    }
    const std::string* type = e.attr("type");
    const ElementRule* rule = profile_.rule_for(e.name, type);
    if (!rule) {
      if (type) {
        emit(e, "E-PROFILE-VALUE", "<" + e.name + "> type '" + *type + "' is not in the profile");
      } else {
        emit(e, "E-PROFILE-REQUIRED", "<" + e.name + "> requires @type");
      }
    }
    return rule;
  }

  void attributes(const xml::Element& e, const ElementRule& rule) {
    for (const auto& a : e.attributes) {
      if (a.name == "xmlns") {
        if (a.value != profile_.ns) emit(e, "E-PROFILE-NS", "namespace '" + a.value + "' is not " + profile_.ns);
        continue;
      }
      if (a.name.starts_with("xmlns:")) {
        emit(e, "E-PROFILE-NS", "namespace declaration " + a.name + " is not accepted");
        continue;
      }
      const AttrRule* ar = rule.attribute(a.name);
      if (!ar) {
        emit(e, "E-PROFILE-ATTR", "@" + a.name + " is not allowed on <" + e.name + ">");
        continue;
      }
      if (!valid_value(*ar, utf8::collapse_whitespace(a.value))) {
        emit(e, "E-PROFILE-VALUE", "@" + a.name + " value '" + a.value + "' is not a valid " + kind_name(*ar));
      }
    }
    for (const auto& ar : rule.attributes) {
      if (ar.required && !e.attr(ar.name)) {
        emit(e, "E-PROFILE-REQUIRED", "<" + e.name + "> requires @" + ar.name);
      }
    }
  }

  static std::string kind_name(const AttrRule& r) {
    switch (r.kind) {
      case AttrKind::id: return "id";
      case AttrKind::idref: return "#id reference";
      case AttrKind::idrefs: return "list of #id references";
      case AttrKind::lang: return "language tag";
      case AttrKind::token: return "token";
      case AttrKind::posint: return "positive integer";
      case AttrKind::year: return "year";
      case AttrKind::enumeration: {
        std::string s = "value (one of";
        for (const auto& v : r.values) s += " " + v;
        return s + ")";
      }
      case AttrKind::text: return "text";
    }
    return "value";
  }

  static std::optional<std::size_t> group_of(const ElementRule& rule, const std::string& key) {
    for (std::size_t g = 0; g < rule.children.size(); ++g) {
      const auto& keys = rule.children[g].keys;
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) return g;
    }
    return std::nullopt;
  }

  static std::string group_name(const ChildGroup& g) {
    std::string s;
    for (const auto& k : g.keys) s += (s.empty() ? "" : "|") + k;
    return s;
  }

  void too_few(const xml::Element& parent, const ChildGroup& g, std::size_t count) {
    if (count < g.min) {
      emit(parent, "E-PROFILE-CARD", "<" + parent.name + "> needs at least " + std::to_string(g.min) + " " +
                                         group_name(g) + ", found " + std::to_string(count));
    }
  }

  void element(const xml::Element& e, const ElementRule& rule) {
    attributes(e, rule);
    switch (rule.content) {
      case ContentKind::text:
      case ContentKind::verbatim:
        for (const auto& c : e.children) emit(c, "E-PROFILE-TEXT", "<" + e.name + "> holds text only, found <" + c.name + ">");
        return;
      case ContentKind::empty:
        if (!utf8::all_space(e.text)) emit(e, "E-PROFILE-TEXT", "<" + e.name + "> must be empty");
        for (const auto& c : e.children) emit(c, "E-PROFILE-TEXT", "<" + e.name + "> must be empty, found <" + c.name + ">");
        return;
      case ContentKind::children:
        break;
    }
    if (!utf8::all_space(e.text)) emit(e, "E-PROFILE-TEXT", "<" + e.name + "> does not take text content");
    std::vector<std::size_t> counts(rule.children.size(), 0);
    std::size_t current = 0;
    for (const auto& c : e.children) {
      const ElementRule* cr = resolve(c);
      if (!cr) continue;
      auto g = group_of(rule, cr->key());
      if (!g) {
        emit(c, "E-PROFILE-ELEMENT", "<" + cr->key() + "> is not permitted inside <" + e.name + ">");
        continue;
      }
      if (rule.ordered) {
        if (*g < current) {
          emit(c, "E-PROFILE-ORDER", "<" + cr->key() + "> must come before " + group_name(rule.children[current]));
          element(c, *cr);
          continue;
        }
        for (; current < *g; ++current) too_few(e, rule.children[current], counts[current]);
      }
      const auto& group = rule.children[*g];
      if (group.max && counts[*g] >= *group.max) {
        emit(c, "E-PROFILE-CARD", "<" + e.name + "> allows at most " + std::to_string(*group.max) + " " +
                                      group_name(group));
      }
      ++counts[*g];
      element(c, *cr);
    }
    for (std::size_t g = rule.ordered ? current : 0; g < rule.children.size(); ++g) {
      too_few(e, rule.children[g], counts[g]);
    }
  }

  const SerializationProfile& profile_;
  const std::string& file_;
  std::vector<Diagnostic> out_;
};

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) out += "&quot;";
        else out += c;
        break;
      case '\r': out += "&#13;"; break;
      case '\n':
        if (attribute) out += "&#10;";
        else out += c;
        break;
      case '\t':
        if (attribute) out += "&#9;";
        else out += c;
        break;
      default: out += c;
    }
  }
}

void write(std::string& out, const xml::Element& e, const SerializationProfile& profile, std::size_t depth,
           bool declare_ns) {
  const ElementRule* rule = profile.rule_for(e.name, e.attr("type"));
  out.append(depth * 2, ' ');
  out += '<';
  out += e.name;
  if (declare_ns) {
    out += " xmlns=\"";
    escape_into(out, profile.ns, true);
    out += '"';
  }
  if (rule) {
    for (const auto& ar : rule->attributes) {
      const std::string* v = e.attr(ar.name);
      if (!v) continue;
      out += ' ';
      out += ar.name;
      out += "=\"";
      escape_into(out, utf8::collapse_whitespace(*v), true);
      out += '"';
    }
  }
  const ContentKind content = rule ? rule->content : ContentKind::children;
  if (content == ContentKind::text || content == ContentKind::verbatim) {
    out += '>';
    escape_into(out, content == ContentKind::text ? utf8::collapse_whitespace(e.text) : e.text, false);
    out += "</" + e.name + ">\n";
    return;
  }
  if (e.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const auto& c : e.children) write(out, c, profile, depth + 1, false);
  out.append(depth * 2, ' ');
  out += "</" + e.name + ">\n";
}

}  // namespace

std::vector<Diagnostic> check_tree(const xml::Element& root, const SerializationProfile& profile,
                                   const std::string& file) {
  return TreeChecker(profile, file).run(root);
}

std::string write_canonical(const xml::Element& root, const SerializationProfile& profile, bool declare_ns) {
  std::string out;
  write(out, root, profile, 0, declare_ns);
  return out;
}

}  // namespace detail

}  // namespace lmfkit
