#pragma once

// RDF terms, triples and graphs with set semantics. Graphs are value types:
// build them, then share them as const references. Nothing in here does I/O.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hypersig::rdf {

struct Iri {
  std::string value;
  auto operator<=>(const Iri&) const = default;
};

struct Blank {
  std::string label;
  auto operator<=>(const Blank&) const = default;
};

struct Literal {
  std::string lexical;
  std::string datatype;  // absolute datatype IRI; xsd:string for plain strings
  std::string language;  // only for language-tagged strings
  auto operator<=>(const Literal&) const = default;
};

using Term = std::variant<Iri, Blank, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<Blank>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

inline const std::string& iri_of(const Term& t) { return std::get<Iri>(t).value; }

struct Triple {
  Term s;
  Term p;  // always an Iri; enforced on insert
  Term o;
  auto operator<=>(const Triple&) const = default;
};

class MalformedList : public std::runtime_error {
 public:
  explicit MalformedList(const std::string& what) : std::runtime_error(what) {}
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

class UnresolvedPrefix : public std::runtime_error {
 public:
  explicit UnresolvedPrefix(const std::string& prefix)
      : std::runtime_error("unresolved prefix '" + prefix + ":'"), prefix(prefix) {}
  std::string prefix;
};

namespace ns {
inline const std::string rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string xsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

inline const std::string xsd_string = ns::xsd + "string";
inline const std::string xsd_integer = ns::xsd + "integer";
inline const std::string rdf_type = ns::rdf + "type";
inline const std::string rdf_first = ns::rdf + "first";
inline const std::string rdf_rest = ns::rdf + "rest";
inline const std::string rdf_nil = ns::rdf + "nil";
inline const std::string rdf_lang_string = ns::rdf + "langString";

inline Term iri(std::string v) { return Iri{std::move(v)}; }
inline Term blank(std::string label) { return Blank{std::move(label)}; }
inline Term lit(std::string lexical, std::string datatype = xsd_string) {
  return Literal{std::move(lexical), std::move(datatype), ""};
}
inline Term lang_lit(std::string lexical, std::string language) {
  return Literal{std::move(lexical), rdf_lang_string, std::move(language)};
}
inline Term int_lit(std::int64_t n) { return lit(std::to_string(n), xsd_integer); }

// Canonical lexical form for value comparison. Integers are normalised
// numerically so "0500", "+500" and "500" compare equal; everything else
// compares by exact lexical form.
inline std::string canonical_lexical(const Literal& l) {
  if (l.datatype == xsd_integer) {
    const std::string& s = l.lexical;
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    while (i + 1 < s.size() && s[i] == '0') ++i;
    std::string digits = s.substr(i);
    if (digits == "0") neg = false;
    return (neg ? "-" : "") + digits;
  }
  return l.lexical;
}

// Datatype-aware term equality: IRIs and blanks by identity, literals by
// (datatype, language, canonical lexical). A string "500" never equals the
// integer 500.
inline bool value_equal(const Term& a, const Term& b) {
  if (a.index() != b.index()) return false;
  if (is_literal(a)) {
    const auto& la = std::get<Literal>(a);
    const auto& lb = std::get<Literal>(b);
    return la.datatype == lb.datatype && la.language == lb.language &&
           canonical_lexical(la) == canonical_lexical(lb);
  }
  return a == b;
}

class Graph {
 public:
  using TripleSet = std::set<Triple>;

  Graph() = default;

  void insert(Triple t) {
    if (is_literal(t.s)) throw std::invalid_argument("literal in subject position");
    if (!is_iri(t.p)) throw std::invalid_argument("predicate must be an IRI");
    triples_.insert(std::move(t));
  }
  void insert(Term s, Term p, Term o) { insert(Triple{std::move(s), std::move(p), std::move(o)}); }

  void merge(const Graph& other) {
    for (const auto& t : other.triples_) triples_.insert(t);
    for (const auto& [k, v] : other.prefixes_)
      prefixes_.emplace(k, v);  // first binding wins
  }

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const TripleSet& triples() const { return triples_; }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  bool contains(const Term& s, const Term& p, const Term& o) const {
    return triples_.count(Triple{s, p, o}) > 0;
  }

  // Wildcard pattern match; nullopt matches anything.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const {
    std::vector<Triple> out;
    for (const auto& t : triples_) {
      if (s && !(t.s == *s)) continue;
      if (p && !(t.p == *p)) continue;
      if (o && !(t.o == *o)) continue;
      out.push_back(t);
    }
    return out;
  }

  std::vector<Term> objects_of(const Term& s, const std::string& pred) const {
    std::vector<Term> out;
    for (const auto& t : match(s, iri(pred), std::nullopt)) out.push_back(t.o);
    return out;
  }

  std::optional<Term> object_of(const Term& s, const std::string& pred) const {
    auto v = objects_of(s, pred);
    if (v.empty()) return std::nullopt;
    return v.front();
  }

  std::vector<Term> subjects_of_type(const std::string& class_iri) const {
    std::vector<Term> out;
    for (const auto& t : match(std::nullopt, iri(rdf_type), iri(class_iri))) out.push_back(t.s);
    return out;
  }

  bool has_type(const Term& node, const std::string& class_iri) const {
    return contains(node, iri(rdf_type), iri(class_iri));
  }

  // Walks an rdf:first/rdf:rest chain from head to rdf:nil. Throws
  // MalformedList on cycles, branching or missing links.
  std::vector<Term> read_list(const Term& head) const {
    std::vector<Term> items;
    Term node = head;
    std::set<Term> seen;
    while (!(is_iri(node) && iri_of(node) == rdf_nil)) {
      if (is_literal(node)) throw MalformedList("list node is a literal");
      if (!seen.insert(node).second) throw MalformedList("cyclic rdf:rest chain");
      auto firsts = objects_of(node, rdf_first);
      auto rests = objects_of(node, rdf_rest);
      if (firsts.size() != 1) throw MalformedList("list node without exactly one rdf:first");
      if (rests.size() != 1) throw MalformedList("list node without exactly one rdf:rest");
      items.push_back(firsts.front());
      node = rests.front();
    }
    return items;
  }

  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  void set_prefix(const std::string& name, const std::string& expansion) {
    prefixes_[name] = expansion;
  }
  const std::optional<std::string>& base() const { return base_; }
  void set_base(std::string b) { base_ = std::move(b); }

  bool operator==(const Graph& other) const { return triples_ == other.triples_; }

 private:
  TripleSet triples_;
  std::map<std::string, std::string> prefixes_;
  std::optional<std::string> base_;
};

namespace detail {

// Per-blank-node signature used to prune the isomorphism search: the multiset
// of (position, predicate, ground-neighbour) facts the node participates in.
inline std::multiset<std::string> blank_signature(const Graph& g, const Blank& b) {
  std::multiset<std::string> sig;
  auto ground_key = [](const Term& t) -> std::string {
    if (is_blank(t)) return "_";
    if (is_iri(t)) return "<" + iri_of(t) + ">";
    const auto& l = std::get<Literal>(t);
    return "\"" + l.lexical + "\"^^" + l.datatype + "@" + l.language;
  };
  for (const auto& t : g) {
    if (is_blank(t.s) && std::get<Blank>(t.s) == b)
      sig.insert("S|" + iri_of(t.p) + "|" + ground_key(t.o));
    if (is_blank(t.o) && std::get<Blank>(t.o) == b)
      sig.insert("O|" + iri_of(t.p) + "|" + ground_key(t.s));
  }
  return sig;
}

inline Term rename_blank(const Term& t, const std::map<Blank, Blank>& m) {
  if (!is_blank(t)) return t;
  auto it = m.find(std::get<Blank>(t));
  return it == m.end() ? t : Term{it->second};
}

inline bool mapping_works(const Graph& a, const Graph& b, const std::map<Blank, Blank>& m) {
  for (const auto& t : a) {
    Triple mapped{rename_blank(t.s, m), t.p, rename_blank(t.o, m)};
    if (!b.contains(mapped.s, mapped.p, mapped.o)) return false;
  }
  return true;
}

inline bool extend_mapping(const Graph& a, const Graph& b, const std::vector<Blank>& a_blanks,
                           std::vector<Blank>& b_pool, std::size_t idx,
                           std::map<Blank, Blank>& m,
                           const std::map<Blank, std::multiset<std::string>>& sig_a,
                           const std::map<Blank, std::multiset<std::string>>& sig_b) {
  if (idx == a_blanks.size()) return mapping_works(a, b, m);
  const Blank& next = a_blanks[idx];
  for (std::size_t i = 0; i < b_pool.size(); ++i) {
    if (sig_a.at(next) != sig_b.at(b_pool[i])) continue;
    Blank candidate = b_pool[i];
    m[next] = candidate;
    b_pool.erase(b_pool.begin() + static_cast<std::ptrdiff_t>(i));
    if (extend_mapping(a, b, a_blanks, b_pool, idx + 1, m, sig_a, sig_b)) return true;
    b_pool.insert(b_pool.begin() + static_cast<std::ptrdiff_t>(i), candidate);
    m.erase(next);
  }
  return false;
}

inline std::vector<Blank> blanks_of(const Graph& g) {
  std::set<Blank> s;
  for (const auto& t : g) {
    if (is_blank(t.s)) s.insert(std::get<Blank>(t.s));
    if (is_blank(t.o)) s.insert(std::get<Blank>(t.o));
  }
  return {s.begin(), s.end()};
}

}  // namespace detail

// Graph isomorphism under blank-node relabelling. Exact (backtracking with
// signature pruning); intended for graphs with at most a few dozen blanks.
inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  std::vector<Blank> a_blanks = detail::blanks_of(a);
  std::vector<Blank> b_blanks = detail::blanks_of(b);
  if (a_blanks.size() != b_blanks.size()) return false;
  // Ground triples must match exactly.
  for (const auto& t : a)
    if (!is_blank(t.s) && !is_blank(t.o) && !b.contains(t.s, t.p, t.o)) return false;
  std::map<Blank, std::multiset<std::string>> sig_a, sig_b;
  for (const auto& x : a_blanks) sig_a[x] = detail::blank_signature(a, x);
  for (const auto& x : b_blanks) sig_b[x] = detail::blank_signature(b, x);
  std::map<Blank, Blank> m;
  return detail::extend_mapping(a, b, a_blanks, b_blanks, 0, m, sig_a, sig_b);
}

}  // namespace hypersig::rdf
