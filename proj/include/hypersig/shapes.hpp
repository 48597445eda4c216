#pragma once

// Shape constraint checking over RDF graphs — the subset needed to score
// recommended contexts: node/class targets, sh:class, counted property
// constraints, sh:hasValue, nested node shapes and qualified value shapes.
// evaluate_context turns per-shape conformance into a [0,1] score over the
// union of artifact and agent situations.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rdf.hpp"
#include "vocab.hpp"

namespace hypersig::shapes {

namespace v = hypersig::vocab;
using rdf::Graph;
using rdf::Term;

class ShapeError : public std::runtime_error {
 public:
  enum class Kind { UnsupportedConstraint, CyclicShape, MalformedShape };
  ShapeError(Kind kind, const std::string& construct, const std::string& what)
      : std::runtime_error(what), kind(kind), construct(construct) {}
  Kind kind;
  std::string construct;  // offending IRI or node key
};

struct PropertyConstraint {
  std::string path;  // single predicate IRI
  std::optional<int> min_count;
  std::optional<int> max_count;
  std::optional<Term> has_value;
  std::optional<std::string> value_class;      // sh:class on the values
  std::optional<std::string> node_shape;       // sh:node — all values must conform
  std::optional<std::string> qualified_shape;  // sh:qualifiedValueShape
  std::optional<int> qualified_min_count;      // sh:qualifiedMinCount
};

struct Shape {
  std::string id;  // IRI or "_:label"
  std::vector<Term> target_nodes;
  std::vector<std::string> target_classes;
  std::vector<std::string> class_constraints;  // sh:class on the shape itself
  std::vector<PropertyConstraint> properties;
};

// A root shape plus every shape it references, keyed by node id.
struct ShapeBundle {
  std::string root;
  std::map<std::string, Shape> shapes;
};

struct ShapeViolation {
  Term focus;
  std::string constraint;  // e.g. "sh:minCount", "sh:hasValue", "NoFocusNodes"
  std::string detail;
};

struct ConformanceReport {
  bool conforms = false;
  std::size_t focus_count = 0;
  std::vector<ShapeViolation> violations;
};

namespace detail {

inline std::string node_key(const Term& t) {
  return rdf::is_iri(t) ? rdf::iri_of(t) : "_:" + std::get<rdf::Blank>(t).label;
}

inline std::optional<int> int_object(const Graph& g, const Term& node, const std::string& pred) {
  auto o = g.object_of(node, pred);
  if (!o) return std::nullopt;
  if (!rdf::is_literal(*o))
    throw ShapeError(ShapeError::Kind::MalformedShape, pred, pred + " needs an integer");
  try {
    return std::stoi(std::get<rdf::Literal>(*o).lexical);
  } catch (const std::exception&) {
    throw ShapeError(ShapeError::Kind::MalformedShape, pred, pred + " needs an integer");
  }
}

inline const std::set<std::string>& shape_predicates() {
  static const std::set<std::string> s = {v::sh_targetNode, v::sh_targetClass, v::sh_class,
                                          v::sh_property};
  return s;
}

inline const std::set<std::string>& constraint_predicates() {
  static const std::set<std::string> s = {v::sh_path,     v::sh_minCount,
                                          v::sh_maxCount, v::sh_hasValue,
                                          v::sh_class,    v::sh_node,
                                          v::sh_qualifiedValueShape, v::sh_qualifiedMinCount};
  return s;
}

inline void reject_unsupported(const Graph& g, const Term& node,
                               const std::set<std::string>& allowed) {
  for (const auto& t : g.match(node, std::nullopt, std::nullopt)) {
    const std::string& p = rdf::iri_of(t.p);
    if (p.rfind(v::sh, 0) == 0 && !allowed.count(p))
      throw ShapeError(ShapeError::Kind::UnsupportedConstraint, p,
                       "unsupported constraint " + p + " on " + node_key(node));
  }
}

struct Resolver {
  const Graph& g;
  ShapeBundle bundle;
  std::vector<std::string> stack;

  void resolve(const Term& node) {
    std::string key = node_key(node);
    for (const auto& s : stack)
      if (s == key)
        throw ShapeError(ShapeError::Kind::CyclicShape, key,
                         "shape reference cycle through " + key);
    if (bundle.shapes.count(key)) return;
    stack.push_back(key);
    reject_unsupported(g, node, shape_predicates());
    Shape shape;
    shape.id = key;
    for (const auto& t : g.objects_of(node, v::sh_targetNode)) shape.target_nodes.push_back(t);
    for (const auto& t : g.objects_of(node, v::sh_targetClass))
      shape.target_classes.push_back(rdf::iri_of(t));
    for (const auto& c : g.objects_of(node, v::sh_class))
      shape.class_constraints.push_back(rdf::iri_of(c));
    std::vector<Term> nested;
    for (const auto& cnode : g.objects_of(node, v::sh_property)) {
      reject_unsupported(g, cnode, constraint_predicates());
      PropertyConstraint pc;
      auto path = g.object_of(cnode, v::sh_path);
      if (!path)
        throw ShapeError(ShapeError::Kind::MalformedShape, node_key(cnode),
                         "property constraint without sh:path");
      if (!rdf::is_iri(*path))
        throw ShapeError(ShapeError::Kind::UnsupportedConstraint, v::sh_path,
                         "only single-predicate paths are supported");
      pc.path = rdf::iri_of(*path);
      pc.min_count = int_object(g, cnode, v::sh_minCount);
      pc.max_count = int_object(g, cnode, v::sh_maxCount);
      pc.has_value = g.object_of(cnode, v::sh_hasValue);
      if (auto vc = g.object_of(cnode, v::sh_class)) pc.value_class = rdf::iri_of(*vc);
      if (auto ns = g.object_of(cnode, v::sh_node)) {
        pc.node_shape = node_key(*ns);
        nested.push_back(*ns);
      }
      auto qs = g.object_of(cnode, v::sh_qualifiedValueShape);
      auto qmc = int_object(g, cnode, v::sh_qualifiedMinCount);
      if (qs.has_value() != qmc.has_value())
        throw ShapeError(ShapeError::Kind::MalformedShape, node_key(cnode),
                         "sh:qualifiedValueShape and sh:qualifiedMinCount must appear together");
      if (qs) {
        pc.qualified_shape = node_key(*qs);
        pc.qualified_min_count = qmc;
        nested.push_back(*qs);
      }
      shape.properties.push_back(std::move(pc));
    }
    bundle.shapes[key] = std::move(shape);
    for (const auto& n : nested) resolve(n);
    stack.pop_back();
  }
};

}  // namespace detail

// Resolves a root shape and everything it references from g. Throws
// ShapeError on unsupported constructs, malformed counts or reference cycles.
inline ShapeBundle read_shapes(const Graph& g, const Term& root) {
  detail::Resolver r{g, {}, {}};
  r.resolve(root);
  r.bundle.root = detail::node_key(root);
  return r.bundle;
}

namespace detail {

inline bool node_satisfies(const ShapeBundle& b, const Shape& shape, const Term& node,
                           const Graph& data, std::vector<ShapeViolation>* out);

inline bool check_constraint(const ShapeBundle& b, const PropertyConstraint& pc,
                             const Term& focus, const Graph& data,
                             std::vector<ShapeViolation>* out) {
  bool ok = true;
  auto report = [&](const std::string& constraint, const std::string& detail) {
    ok = false;
    if (out) out->push_back({focus, constraint, detail});
  };
  std::vector<Term> values =
      rdf::is_literal(focus) ? std::vector<Term>{} : data.objects_of(focus, pc.path);
  auto n = static_cast<int>(values.size());
  if (pc.min_count && n < *pc.min_count)
    report("sh:minCount", pc.path + ": " + std::to_string(n) + " < " +
                              std::to_string(*pc.min_count));
  if (pc.max_count && n > *pc.max_count)
    report("sh:maxCount", pc.path + ": " + std::to_string(n) + " > " +
                              std::to_string(*pc.max_count));
  if (pc.has_value) {
    bool hit = false;
    for (const auto& val : values)
      if (rdf::value_equal(val, *pc.has_value)) hit = true;
    if (!hit) report("sh:hasValue", pc.path + " lacks the required value");
  }
  if (pc.value_class) {
    for (const auto& val : values)
      if (rdf::is_literal(val) || !data.has_type(val, *pc.value_class))
        report("sh:class", pc.path + " value is not a " + *pc.value_class);
  }
  if (pc.node_shape) {
    const Shape& nested = b.shapes.at(*pc.node_shape);
    for (const auto& val : values)
      if (!node_satisfies(b, nested, val, data, nullptr))
        report("sh:node", pc.path + " value fails shape " + *pc.node_shape);
  }
  if (pc.qualified_shape) {
    const Shape& nested = b.shapes.at(*pc.qualified_shape);
    int conforming = 0;
    for (const auto& val : values)
      if (node_satisfies(b, nested, val, data, nullptr)) ++conforming;
    if (conforming < *pc.qualified_min_count)
      report("sh:qualifiedMinCount", pc.path + ": " + std::to_string(conforming) +
                                         " conforming < " +
                                         std::to_string(*pc.qualified_min_count));
  }
  return ok;
}

inline bool node_satisfies(const ShapeBundle& b, const Shape& shape, const Term& node,
                           const Graph& data, std::vector<ShapeViolation>* out) {
  bool ok = true;
  for (const auto& cls : shape.class_constraints) {
    if (rdf::is_literal(node) || !data.has_type(node, cls)) {
      ok = false;
      if (out) out->push_back({node, "sh:class", "node is not a " + cls});
    }
  }
  for (const auto& pc : shape.properties)
    if (!check_constraint(b, pc, node, data, out)) ok = false;
  return ok;
}

}  // namespace detail

// Validates the bundle's root shape against data. Focus nodes are the
// explicit target nodes plus all instances of the target classes; a shape
// that selects no focus node does not conform (vacuous conformance is
// rejected, because an exposure decision needs evidence).
inline ConformanceReport conforms(const ShapeBundle& bundle, const Graph& data) {
  const Shape& root = bundle.shapes.at(bundle.root);
  std::set<Term> focus(root.target_nodes.begin(), root.target_nodes.end());
  for (const auto& cls : root.target_classes)
    for (const auto& n : data.subjects_of_type(cls)) focus.insert(n);
  ConformanceReport report;
  report.focus_count = focus.size();
  if (focus.empty()) {
    report.conforms = false;
    report.violations.push_back({rdf::iri(bundle.root), "NoFocusNodes",
                                 "shape selected no focus nodes"});
    return report;
  }
  report.conforms = true;
  for (const auto& node : focus)
    if (!detail::node_satisfies(bundle, root, node, data, &report.violations))
      report.conforms = false;
  return report;
}

// Fraction of recommended contexts that conform against the union of the
// artifact and agent situations. No contexts means nothing is required: 1.0.
inline double evaluate_context(const std::vector<ShapeBundle>& contexts,
                               const Graph& artifact_situation, const Graph& agent_situation) {
  if (contexts.empty()) return 1.0;
  Graph data;
  data.merge(artifact_situation);
  data.merge(agent_situation);
  std::size_t passing = 0;
  for (const auto& c : contexts)
    if (conforms(c, data).conforms) ++passing;
  return static_cast<double>(passing) / static_cast<double>(contexts.size());
}

}  // namespace hypersig::shapes
