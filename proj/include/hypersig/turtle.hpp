#pragma once

// Turtle reader/writer for the subset used by the environment: @prefix and
// @base directives, prefixed names, relative and absolute IRIs, blank node
// labels and property lists, predicate/object lists, the `a` keyword, typed
// and language-tagged strings, integer shorthand, and collections. No
// decimals/doubles, no triple-quoted strings.

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rdf.hpp"

namespace hypersig::turtle {

using rdf::Graph;
using rdf::SyntaxError;
using rdf::Term;
using rdf::UnresolvedPrefix;

namespace detail {

struct UriParts {
  std::string scheme;     // without ':'
  std::string authority;  // without '//'
  std::string path;
  std::string query;     // without '?'
  std::string fragment;  // without '#'
  bool has_authority = false;
  bool has_query = false;
  bool has_fragment = false;
};

inline UriParts split_uri(const std::string& s) {
  UriParts u;
  std::size_t i = 0;
  // scheme
  if (!s.empty() && std::isalpha(static_cast<unsigned char>(s[0]))) {
    std::size_t j = 1;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '+' ||
                            s[j] == '-' || s[j] == '.'))
      ++j;
    if (j < s.size() && s[j] == ':') {
      u.scheme = s.substr(0, j);
      i = j + 1;
    }
  }
  if (s.compare(i, 2, "//") == 0) {
    u.has_authority = true;
    std::size_t j = i + 2;
    while (j < s.size() && s[j] != '/' && s[j] != '?' && s[j] != '#') ++j;
    u.authority = s.substr(i + 2, j - (i + 2));
    i = j;
  }
  std::size_t j = i;
  while (j < s.size() && s[j] != '?' && s[j] != '#') ++j;
  u.path = s.substr(i, j - i);
  i = j;
  if (i < s.size() && s[i] == '?') {
    u.has_query = true;
    j = ++i;
    while (j < s.size() && s[j] != '#') ++j;
    u.query = s.substr(i, j - i);
    i = j;
  }
  if (i < s.size() && s[i] == '#') {
    u.has_fragment = true;
    u.fragment = s.substr(i + 1);
  }
  return u;
}

inline std::string remove_dot_segments(std::string input) {
  std::string out;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.erase(0, 2);
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0) {
      input.erase(0, 3);
      auto k = out.find_last_of('/');
      out.erase(k == std::string::npos ? 0 : k);
    } else if (input == "/..") {
      input = "/";
      auto k = out.find_last_of('/');
      out.erase(k == std::string::npos ? 0 : k);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t k = input.find('/', 1);
      out += input.substr(0, k);
      input.erase(0, k == std::string::npos ? input.size() : k);
    }
  }
  return out;
}

inline std::string recompose(const UriParts& u) {
  std::string s;
  if (!u.scheme.empty()) s += u.scheme + ":";
  if (u.has_authority) s += "//" + u.authority;
  s += u.path;
  if (u.has_query) s += "?" + u.query;
  if (u.has_fragment) s += "#" + u.fragment;
  return s;
}

// RFC 3986 section 5.2 reference resolution, trimmed to what IRIs in
// profiles need.
inline std::string resolve_iri(const std::string& ref, const std::optional<std::string>& base) {
  UriParts r = split_uri(ref);
  if (!r.scheme.empty()) {
    r.path = remove_dot_segments(r.path);
    return recompose(r);
  }
  if (!base) return ref;  // nothing to resolve against; keep as written
  UriParts b = split_uri(*base);
  UriParts t;
  t.scheme = b.scheme;
  t.has_fragment = r.has_fragment;
  t.fragment = r.fragment;
  if (r.has_authority) {
    t.has_authority = true;
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.has_query = r.has_query;
    t.query = r.query;
  } else {
    t.has_authority = b.has_authority;
    t.authority = b.authority;
    if (r.path.empty()) {
      t.path = b.path;
      t.has_query = r.has_query ? true : b.has_query;
      t.query = r.has_query ? r.query : b.query;
    } else {
      if (r.path[0] == '/') {
        t.path = remove_dot_segments(r.path);
      } else {
        std::string merged;
        if (b.has_authority && b.path.empty()) {
          merged = "/" + r.path;
        } else {
          auto k = b.path.find_last_of('/');
          merged = (k == std::string::npos ? "" : b.path.substr(0, k + 1)) + r.path;
        }
        t.path = remove_dot_segments(merged);
      }
      t.has_query = r.has_query;
      t.query = r.query;
    }
  }
  return recompose(t);
}

class Parser {
 public:
  Parser(std::string_view text, std::optional<std::string> base)
      : text_(text), base_(std::move(base)) {
    if (base_) graph_.set_base(*base_);
  }

  Graph run() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        directive();
      } else {
        triples();
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::optional<std::string> base_;
  Graph graph_;
  int gen_counter_ = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, col_, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char advance() {
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  bool try_consume(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  void directive() {
    expect('@');
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += advance();
    if (word == "prefix") {
      skip_ws();
      std::string name = read_prefix_name();
      expect(':');
      skip_ws();
      std::string iri = read_iri_ref();
      graph_.set_prefix(name, iri);
      expect('.');
    } else if (word == "base") {
      skip_ws();
      std::string iri = read_iri_ref();
      base_ = iri;
      graph_.set_base(iri);
      expect('.');
    } else {
      fail("unknown directive '@" + word + "'");
    }
  }

  std::string read_prefix_name() {
    std::string name;
    if (!at_end() && name_start(peek())) {
      name += advance();
      while (!at_end() && (name_char(peek()) || peek() == '.')) {
        if (peek() == '.' && !name_char(peek(1))) break;
        name += advance();
      }
    }
    return name;  // may be empty (default prefix)
  }

  // <...>, resolved against the current base.
  std::string read_iri_ref() {
    if (at_end() || peek() != '<') fail("expected IRI");
    advance();
    std::string raw;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = advance();
      if (c == '>') break;
      if (c == '<' || c == '"' || c == ' ' || c == '\n' || c == '\t' || c == '\r')
        fail("illegal character in IRI");
      raw += c;
    }
    return detail::resolve_iri(raw, base_);
  }

  static bool local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '%';
  }

  std::string read_pname() {
    std::string prefix = read_prefix_name();
    skip_nothing();
    if (at_end() || peek() != ':') fail("expected ':' in prefixed name");
    advance();
    std::string local;
    while (!at_end() && (local_char(peek()) || peek() == '.')) {
      if (peek() == '.' && !(local_char(peek(1)) || peek(1) == '.')) break;  // statement dot
      local += advance();
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) throw UnresolvedPrefix(prefix);
    return it->second + local;
  }

  void skip_nothing() const {}

  Term gen_blank() { return rdf::blank("anon#" + std::to_string(gen_counter_++)); }

  Term read_blank_label() {
    advance();  // '_'
    if (at_end() || peek() != ':') fail("expected ':' after '_'");
    advance();
    std::string label;
    if (at_end() || !(std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail("blank node label expected");
    while (!at_end() && (name_char(peek()) || peek() == '.')) {
      if (peek() == '.' && !name_char(peek(1))) break;
      label += advance();
    }
    return rdf::blank(label);
  }

  Term read_string_literal() {
    advance();  // opening quote
    std::string s;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = advance();
      if (c == '"') break;
      if (c == '\n') fail("newline in string literal");
      if (c == '\\') {
        if (at_end()) fail("dangling escape");
        char e = advance();
        switch (e) {
          case 't': s += '\t'; break;
          case 'n': s += '\n'; break;
          case 'r': s += '\r'; break;
          case 'b': s += '\b'; break;
          case 'f': s += '\f'; break;
          case '"': s += '"'; break;
          case '\'': s += '\''; break;
          case '\\': s += '\\'; break;
          case 'u': s += read_unicode_escape(4); break;
          case 'U': s += read_unicode_escape(8); break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
      } else {
        s += c;
      }
    }
    // datatype or language tag
    if (!at_end() && peek() == '^') {
      advance();
      if (at_end() || peek() != '^') fail("expected '^^'");
      advance();
      skip_ws();
      std::string dt = peek() == '<' ? read_iri_ref() : read_pname();
      return rdf::lit(s, dt);
    }
    if (!at_end() && peek() == '@') {
      advance();
      std::string tag;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        tag += advance();
      if (tag.empty()) fail("empty language tag");
      return rdf::lang_lit(s, tag);
    }
    return rdf::lit(s);
  }

  std::string read_unicode_escape(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end()) fail("truncated unicode escape");
      char c = advance();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("bad hex digit in unicode escape");
    }
    // UTF-8 encode
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  Term read_integer() {
    std::string s;
    if (peek() == '+' || peek() == '-') s += advance();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("digit expected");
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
    return rdf::lit(s, rdf::xsd_integer);
  }

  Term read_subject() {
    skip_ws();
    if (at_end()) fail("subject expected");
    char c = peek();
    if (c == '<') return rdf::iri(read_iri_ref());
    if (c == '_') return read_blank_label();
    if (c == '[') return read_blank_property_list();
    if (c == '(') fail("collections are not allowed in subject position");
    return rdf::iri(read_pname());
  }

  Term read_predicate() {
    skip_ws();
    if (at_end()) fail("predicate expected");
    char c = peek();
    if (c == '<') return rdf::iri(read_iri_ref());
    // bare 'a'
    if (c == 'a' && !name_char(peek(1)) && peek(1) != ':' && peek(1) != '.') {
      advance();
      return rdf::iri(rdf::rdf_type);
    }
    return rdf::iri(read_pname());
  }

  Term read_object() {
    skip_ws();
    if (at_end()) fail("object expected");
    char c = peek();
    if (c == '<') return rdf::iri(read_iri_ref());
    if (c == '_') return read_blank_label();
    if (c == '[') return read_blank_property_list();
    if (c == '(') return read_collection();
    if (c == '"') return read_string_literal();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return read_integer();
    return rdf::iri(read_pname());
  }

  Term read_collection() {
    advance();  // '('
    std::vector<Term> items;
    while (true) {
      skip_ws();
      if (at_end()) fail("unterminated collection");
      if (peek() == ')') {
        advance();
        break;
      }
      items.push_back(read_object());
    }
    if (items.empty()) return rdf::iri(rdf::rdf_nil);
    Term head = gen_blank();
    Term node = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      graph_.insert(node, rdf::iri(rdf::rdf_first), items[i]);
      Term rest = (i + 1 == items.size()) ? rdf::iri(rdf::rdf_nil) : gen_blank();
      graph_.insert(node, rdf::iri(rdf::rdf_rest), rest);
      node = rest;
    }
    return head;
  }

  Term read_blank_property_list() {
    advance();  // '['
    Term node = gen_blank();
    skip_ws();
    if (!at_end() && peek() == ']') {
      advance();
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      Term pred = read_predicate();
      object_list(subject, pred);
      skip_ws();
      if (!at_end() && peek() == ';') {
        advance();
        skip_ws();
        // allow trailing ';' before '.' or ']'
        if (!at_end() && (peek() == '.' || peek() == ']' || peek() == ';')) {
          while (!at_end() && peek() == ';') {
            advance();
            skip_ws();
          }
          if (!at_end() && (peek() == '.' || peek() == ']')) return;
        }
        continue;
      }
      return;
    }
  }

  void object_list(const Term& subject, const Term& pred) {
    while (true) {
      Term obj = read_object();
      graph_.insert(subject, pred, obj);
      if (!try_consume(',')) return;
    }
  }

  void triples() {
    skip_ws();
    if (at_end()) return;
    if (peek() == '[') {
      Term subject = read_blank_property_list();
      skip_ws();
      if (!at_end() && peek() != '.') predicate_object_list(subject);
      expect('.');
      return;
    }
    Term subject = read_subject();
    predicate_object_list(subject);
    expect('.');
  }
};

}  // namespace detail

inline Graph parse(std::string_view text, std::optional<std::string> base = std::nullopt) {
  return detail::Parser(text, std::move(base)).run();
}

inline std::string resolve_iri(const std::string& ref, const std::string& base) {
  return detail::resolve_iri(ref, base);
}

namespace detail {

inline bool integer_shorthand_ok(const std::string& lexical) {
  if (lexical.empty()) return false;
  std::size_t i = (lexical[0] == '+' || lexical[0] == '-') ? 1 : 0;
  if (i == lexical.size()) return false;
  for (; i < lexical.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(lexical[i]))) return false;
  return true;
}

inline bool pn_local_ok(const std::string& local) {
  if (local.empty()) return true;
  for (char c : local)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
      return false;
  return local.front() != '.' && local.front() != '-' && local.back() != '.';
}

inline std::string escape_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Serialises a graph back to Turtle. Blank nodes get generated labels;
// round-tripping therefore preserves the graph only up to isomorphism.
inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  for (const auto& [name, expansion] : g.prefixes())
    out << "@prefix " << name << ": <" << expansion << "> .\n";
  if (!g.prefixes().empty()) out << "\n";

  // Stable fresh labels for every blank node.
  std::map<rdf::Blank, std::string> labels;
  for (const auto& t : g) {
    if (rdf::is_blank(t.s)) labels.emplace(std::get<rdf::Blank>(t.s), "");
    if (rdf::is_blank(t.o)) labels.emplace(std::get<rdf::Blank>(t.o), "");
  }
  int n = 0;
  for (auto& [b, label] : labels) label = "b" + std::to_string(n++);

  auto render_iri = [&](const std::string& iri) -> std::string {
    std::string best_name;
    std::string best_ns;
    for (const auto& [name, expansion] : g.prefixes()) {
      if (iri.size() >= expansion.size() && iri.compare(0, expansion.size(), expansion) == 0 &&
          expansion.size() > best_ns.size()) {
        std::string local = iri.substr(expansion.size());
        if (detail::pn_local_ok(local) && local.find('/') == std::string::npos) {
          best_name = name;
          best_ns = expansion;
        }
      }
    }
    if (!best_ns.empty()) return best_name + ":" + iri.substr(best_ns.size());
    return "<" + iri + ">";
  };

  auto render = [&](const Term& t) -> std::string {
    if (rdf::is_iri(t)) return render_iri(rdf::iri_of(t));
    if (rdf::is_blank(t)) return "_:" + labels.at(std::get<rdf::Blank>(t));
    const auto& l = std::get<rdf::Literal>(t);
    if (l.datatype == rdf::xsd_integer && detail::integer_shorthand_ok(l.lexical))
      return l.lexical;
    std::string q = "\"" + detail::escape_string(l.lexical) + "\"";
    if (!l.language.empty()) return q + "@" + l.language;
    if (l.datatype == rdf::xsd_string) return q;
    return q + "^^" + render_iri(l.datatype);
  };

  // Group by subject, then by predicate, preserving set order.
  std::optional<Term> current;
  bool first_pred = true;
  Term current_pred = rdf::iri("");
  for (const auto& t : g) {
    if (!current || !(*current == t.s)) {
      if (current) out << " .\n";
      current = t.s;
      out << render(t.s) << " ";
      first_pred = true;
    }
    if (first_pred || !(current_pred == t.p)) {
      if (!first_pred) out << " ;\n    ";
      current_pred = t.p;
      first_pred = false;
      if (rdf::is_iri(t.p) && rdf::iri_of(t.p) == rdf::rdf_type)
        out << "a " << render(t.o);
      else
        out << render(t.p) << " " << render(t.o);
    } else {
      out << ", " << render(t.o);
    }
  }
  if (current) out << " .\n";
  return out.str();
}

}  // namespace hypersig::turtle
