#pragma once

// Typed domain model over RDF graphs: signifiers with behaviour
// specifications, artifact/agent profiles, JSON input schemas and PDDL
// action annotations. Readers turn graphs into typed values, writers turn
// them back; read(write(p)) preserves p and write(read(g)) is isomorphic to
// g for well-formed profile graphs.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdf.hpp"
#include "vocab.hpp"

namespace hypersig::model {

namespace v = hypersig::vocab;
using nlohmann::json;
using rdf::Graph;
using rdf::Term;

class ModelError : public std::runtime_error {
 public:
  enum class Kind {
    MissingBehaviorSpec,
    DanglingReference,
    NoProfileNode,
    MultipleProfileNodes,
    UnboundVariable,
    UnsupportedSchema,
  };
  ModelError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  Kind kind;
};

struct Form {
  std::string target;                  // absolute IRI after base resolution
  std::optional<std::string> method;   // HTTP method, when stated
  std::string content_type = "application/json";
  bool operator==(const Form&) const = default;
};

// JSON value schema (subset of the WoT json-schema vocabulary). Enum values
// are kept as RDF terms so integers, strings and IRIs stay distinguishable.
struct InputSchema {
  enum class Kind { Object, Integer, String };
  Kind kind = Kind::Object;
  std::string id;             // node IRI; empty for blank nodes
  std::string property_name;  // js:propertyName, when used as an object member
  std::vector<InputSchema> properties;   // Kind::Object
  std::vector<std::string> required;     // Kind::Object
  std::vector<Term> enum_values;         // Kind::Integer / Kind::String
  std::optional<std::int64_t> minimum;   // Kind::Integer
  std::optional<std::int64_t> maximum;   // Kind::Integer
  bool operator==(const InputSchema&) const = default;
};

struct Violation {
  std::string kind;  // TypeMismatch | MissingProperty | EnumMismatch | BoundsViolation
  std::string path;
  std::string detail;
};

struct PddlParameter {
  std::string id;    // node IRI; empty for blank nodes
  std::string name;  // "?x"
  std::string type;  // class IRI
  std::optional<InputSchema> schema;  // binds this parameter to a body property
  bool operator==(const PddlParameter&) const = default;
};

struct PddlAtom {
  std::string predicate;          // IRI
  std::vector<std::string> args;  // "?var" or constant IRI
  bool negated = false;
  auto operator<=>(const PddlAtom&) const = default;
};

struct PddlActionSpec {
  std::string label;
  std::vector<PddlParameter> parameters;
  std::vector<PddlAtom> preconditions;  // negated entries are negative preconditions
  std::vector<PddlAtom> effects;        // negated entries are deletions
  bool operator==(const PddlActionSpec&) const = default;
};

struct ActionSpecification {
  std::string id;
  std::vector<std::string> action_types;  // domain types on the spec node
  std::vector<Form> forms;                // at least one
  std::optional<InputSchema> input;
  std::optional<PddlActionSpec> pddl;
  bool operator==(const ActionSpecification&) const = default;
};

struct ShapeRef {
  std::string iri;
  auto operator<=>(const ShapeRef&) const = default;
};

struct Signifier {
  std::string id;
  ActionSpecification spec;
  std::set<std::string> recommended_abilities;  // ability class IRIs
  std::vector<ShapeRef> recommended_contexts;
  std::optional<double> salience;  // ordering only; higher first
  bool operator==(const Signifier&) const = default;
};

struct ArtifactProfile {
  std::string id;             // profile document IRI
  std::string artifact_iri;   // the profiled artifact
  std::string workspace_iri;  // empty until published into a workspace
  std::vector<Signifier> signifiers;
  Graph situation;  // artifact-descriptive triples, kept verbatim
  std::map<std::string, Graph> context_defs;  // context shape IRI -> closure
};

struct AgentProfile {
  std::string id;
  std::string agent_iri;
  std::string workspace_iri;
  std::set<std::string> abilities;
  Graph situation;  // includes the agent's typing and desires
};

struct InteractionRecord {
  std::string agent_iri;
  std::string target;
  std::int64_t sequence = 0;  // monotonic per workspace
  std::string outcome;        // "succeeded" | "failed"
};

struct WorkspaceData {
  std::string id;   // short name
  std::string iri;  // absolute IRI
  std::vector<std::string> contained_resources;  // profile IRIs, publication order
  std::vector<InteractionRecord> interactions;
};

// ---------------------------------------------------------------------------
// Input schema reading / writing / validation
// ---------------------------------------------------------------------------

namespace detail {

inline std::string node_key(const Term& t) {
  return rdf::is_iri(t) ? rdf::iri_of(t) : "_:" + std::get<rdf::Blank>(t).label;
}

inline std::optional<std::int64_t> integer_of(const Term& t) {
  if (!rdf::is_literal(t)) return std::nullopt;
  const auto& lex = std::get<rdf::Literal>(t).lexical;
  try {
    std::size_t used = 0;
    std::int64_t n = std::stoll(lex, &used);
    if (used != lex.size()) return std::nullopt;
    return n;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::string lexical_of(const Term& t) {
  if (rdf::is_literal(t)) return std::get<rdf::Literal>(t).lexical;
  if (rdf::is_iri(t)) return rdf::iri_of(t);
  return std::get<rdf::Blank>(t).label;
}

}  // namespace detail

inline InputSchema read_input_schema(const Graph& g, const Term& node) {
  InputSchema s;
  if (rdf::is_iri(node)) s.id = rdf::iri_of(node);
  if (g.match(node, std::nullopt, std::nullopt).empty())
    throw ModelError(ModelError::Kind::DanglingReference,
                     "schema node " + detail::node_key(node) + " has no triples");
  if (g.has_type(node, v::js_ObjectSchema)) s.kind = InputSchema::Kind::Object;
  else if (g.has_type(node, v::js_IntegerSchema)) s.kind = InputSchema::Kind::Integer;
  else if (g.has_type(node, v::js_StringSchema)) s.kind = InputSchema::Kind::String;
  else
    throw ModelError(ModelError::Kind::UnsupportedSchema,
                     "schema node " + detail::node_key(node) + " has no supported js type");
  if (auto pn = g.object_of(node, v::js_propertyName))
    s.property_name = detail::lexical_of(*pn);
  if (s.kind == InputSchema::Kind::Object) {
    for (const auto& child : g.objects_of(node, v::js_properties))
      s.properties.push_back(read_input_schema(g, child));
    std::sort(s.properties.begin(), s.properties.end(),
              [](const InputSchema& a, const InputSchema& b) {
                return a.property_name < b.property_name;
              });
    for (const auto& r : g.objects_of(node, v::js_required))
      s.required.push_back(detail::lexical_of(r));
    std::sort(s.required.begin(), s.required.end());
  } else {
    s.enum_values = g.objects_of(node, v::js_enum);
    std::sort(s.enum_values.begin(), s.enum_values.end());
    if (auto m = g.object_of(node, v::js_minimum)) s.minimum = detail::integer_of(*m);
    if (auto m = g.object_of(node, v::js_maximum)) s.maximum = detail::integer_of(*m);
  }
  return s;
}

inline std::vector<Violation> validate_input(const InputSchema& schema, const json& value,
                                             const std::string& path = "") {
  std::vector<Violation> out;
  switch (schema.kind) {
    case InputSchema::Kind::Object: {
      if (!value.is_object()) {
        out.push_back({"TypeMismatch", path, "expected object"});
        return out;
      }
      for (const auto& name : schema.required)
        if (!value.contains(name))
          out.push_back({"MissingProperty", path, "missing required property '" + name + "'"});
      for (const auto& prop : schema.properties) {
        if (!value.contains(prop.property_name)) continue;
        auto sub = validate_input(prop, value.at(prop.property_name),
                                  path.empty() ? prop.property_name
                                               : path + "/" + prop.property_name);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case InputSchema::Kind::Integer: {
      if (!value.is_number_integer()) {
        out.push_back({"TypeMismatch", path, "expected integer"});
        return out;
      }
      std::int64_t n = value.get<std::int64_t>();
      if (!schema.enum_values.empty()) {
        bool hit = false;
        for (const auto& t : schema.enum_values) {
          auto ev = detail::integer_of(t);
          if (ev && *ev == n) hit = true;
        }
        if (!hit)
          out.push_back({"EnumMismatch", path, std::to_string(n) + " not in enumeration"});
      }
      if (schema.minimum && n < *schema.minimum)
        out.push_back({"BoundsViolation", path, "below minimum"});
      if (schema.maximum && n > *schema.maximum)
        out.push_back({"BoundsViolation", path, "above maximum"});
      return out;
    }
    case InputSchema::Kind::String: {
      if (!value.is_string()) {
        out.push_back({"TypeMismatch", path, "expected string"});
        return out;
      }
      const std::string s = value.get<std::string>();
      if (!schema.enum_values.empty()) {
        bool hit = false;
        for (const auto& t : schema.enum_values)
          if (detail::lexical_of(t) == s) hit = true;
        if (!hit) out.push_back({"EnumMismatch", path, "'" + s + "' not in enumeration"});
      }
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PDDL annotation reading
// ---------------------------------------------------------------------------

namespace detail {

// Ordered rdf:_1, rdf:_2, ... members of a container node.
inline std::vector<Term> container_members(const Graph& g, const Term& node) {
  std::vector<std::pair<int, Term>> numbered;
  for (const auto& t : g.match(node, std::nullopt, std::nullopt)) {
    const std::string& p = rdf::iri_of(t.p);
    if (p.rfind(rdf::ns::rdf + "_", 0) == 0) {
      int n = std::stoi(p.substr((rdf::ns::rdf + "_").size()));
      numbered.emplace_back(n, t.o);
    }
  }
  std::sort(numbered.begin(), numbered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> out;
  for (auto& [n, term] : numbered) out.push_back(term);
  return out;
}

inline PddlAtom read_atom(const Graph& g, const Term& node, bool negated) {
  PddlAtom atom;
  atom.negated = negated;
  auto pred = g.object_of(node, v::pddl_predicate);
  if (!pred || !rdf::is_iri(*pred))
    throw ModelError(ModelError::Kind::DanglingReference, "atom without predicate IRI");
  atom.predicate = rdf::iri_of(*pred);
  if (auto args = g.object_of(node, v::pddl_args)) {
    for (const auto& a : g.read_list(*args)) {
      if (rdf::is_literal(a)) atom.args.push_back(std::get<rdf::Literal>(a).lexical);
      else if (rdf::is_iri(a)) atom.args.push_back(rdf::iri_of(a));
      else throw ModelError(ModelError::Kind::DanglingReference, "blank node as atom argument");
    }
  }
  return atom;
}

inline std::vector<PddlAtom> read_condition(const Graph& g, const Term& node) {
  std::vector<PddlAtom> atoms;
  auto one = [&](const Term& n) {
    if (g.has_type(n, v::pddl_Not)) {
      auto inner = g.object_of(n, v::pddl_arg);
      if (!inner)
        throw ModelError(ModelError::Kind::DanglingReference, "negation without argument");
      atoms.push_back(read_atom(g, *inner, true));
    } else {
      atoms.push_back(read_atom(g, n, false));
    }
  };
  if (g.has_type(node, v::pddl_And)) {
    for (const auto& m : container_members(g, node)) one(m);
  } else {
    one(node);
  }
  return atoms;
}

}  // namespace detail

inline PddlActionSpec read_pddl_action(const Graph& g, const Term& spec_node) {
  PddlActionSpec a;
  auto label = g.object_of(spec_node, v::pddl_action_label);
  if (!label || !rdf::is_literal(*label))
    throw ModelError(ModelError::Kind::MissingBehaviorSpec, "pddl action without label");
  a.label = std::get<rdf::Literal>(*label).lexical;
  if (auto seq = g.object_of(spec_node, v::pddl_parameters)) {
    for (const auto& pnode : detail::container_members(g, *seq)) {
      PddlParameter p;
      if (rdf::is_iri(pnode)) p.id = rdf::iri_of(pnode);
      auto name = g.object_of(pnode, v::pddl_name);
      if (!name || !rdf::is_literal(*name))
        throw ModelError(ModelError::Kind::DanglingReference, "pddl parameter without name");
      p.name = std::get<rdf::Literal>(*name).lexical;
      if (auto ty = g.object_of(pnode, v::drs_type)) p.type = rdf::iri_of(*ty);
      if (auto sch = g.object_of(pnode, v::hint_hasSchema))
        p.schema = read_input_schema(g, *sch);
      a.parameters.push_back(std::move(p));
    }
  }
  if (auto pre = g.object_of(spec_node, v::pddl_precondition))
    a.preconditions = detail::read_condition(g, *pre);
  if (auto eff = g.object_of(spec_node, v::pddl_effect))
    a.effects = detail::read_condition(g, *eff);
  // Every variable used in an atom must be declared as a parameter.
  std::set<std::string> names;
  for (const auto& p : a.parameters) names.insert(p.name);
  auto check = [&](const std::vector<PddlAtom>& atoms) {
    for (const auto& atom : atoms)
      for (const auto& arg : atom.args)
        if (!arg.empty() && arg[0] == '?' && !names.count(arg))
          throw ModelError(ModelError::Kind::UnboundVariable,
                           "variable " + arg + " in action '" + a.label +
                               "' is not declared as a parameter");
  };
  check(a.preconditions);
  check(a.effects);
  return a;
}

// ---------------------------------------------------------------------------
// Signifier reading
// ---------------------------------------------------------------------------

inline Signifier read_signifier(const Graph& g, const std::string& sig_iri) {
  Signifier sig;
  sig.id = sig_iri;
  Term sig_node = rdf::iri(sig_iri);
  auto spec_ref = g.object_of(sig_node, v::hint_signifies);
  if (!spec_ref)
    throw ModelError(ModelError::Kind::MissingBehaviorSpec,
                     "signifier " + sig_iri + " signifies nothing");
  if (g.match(*spec_ref, std::nullopt, std::nullopt).empty())
    throw ModelError(ModelError::Kind::DanglingReference,
                     "behaviour specification " + detail::node_key(*spec_ref) +
                         " has no triples");
  ActionSpecification& spec = sig.spec;
  if (rdf::is_iri(*spec_ref)) spec.id = rdf::iri_of(*spec_ref);
  for (const auto& ty : g.objects_of(*spec_ref, rdf::rdf_type)) {
    const std::string& tiri = rdf::iri_of(ty);
    if (tiri != v::hint_ActionSpecification && tiri != v::pddl_Action)
      spec.action_types.push_back(tiri);
  }
  std::sort(spec.action_types.begin(), spec.action_types.end());
  for (const auto& fnode : g.objects_of(*spec_ref, v::hint_hasForm)) {
    Form f;
    auto target = g.object_of(fnode, v::hctl_hasTarget);
    if (!target || !rdf::is_iri(*target))
      throw ModelError(ModelError::Kind::MissingBehaviorSpec,
                       "form without hctl:hasTarget on " + detail::node_key(*spec_ref));
    f.target = rdf::iri_of(*target);
    if (auto m = g.object_of(fnode, v::htv_methodName))
      f.method = detail::lexical_of(*m);
    if (auto ct = g.object_of(fnode, v::hctl_forContentType))
      f.content_type = detail::lexical_of(*ct);
    spec.forms.push_back(std::move(f));
  }
  if (spec.forms.empty())
    throw ModelError(ModelError::Kind::MissingBehaviorSpec,
                     "behaviour specification of " + sig_iri + " has no form");
  std::sort(spec.forms.begin(), spec.forms.end(),
            [](const Form& a, const Form& b) { return a.target < b.target; });
  if (auto in = g.object_of(*spec_ref, v::hint_expects)) {
    auto sch = g.object_of(*in, v::hint_hasSchema);
    if (!sch)
      throw ModelError(ModelError::Kind::DanglingReference,
                       "input of " + sig_iri + " has no schema");
    spec.input = read_input_schema(g, *sch);
  }
  if (g.object_of(*spec_ref, v::pddl_action_label))
    spec.pddl = read_pddl_action(g, *spec_ref);
  for (const auto& ab : g.objects_of(sig_node, v::hint_recommendsAbility)) {
    auto types = g.objects_of(ab, rdf::rdf_type);
    if (types.empty()) {
      // tolerate a bare class IRI as the recommendation itself
      if (rdf::is_iri(ab)) sig.recommended_abilities.insert(rdf::iri_of(ab));
      else
        throw ModelError(ModelError::Kind::DanglingReference,
                         "untyped ability recommendation on " + sig_iri);
    }
    for (const auto& t : types)
      if (rdf::is_iri(t)) sig.recommended_abilities.insert(rdf::iri_of(t));
  }
  for (const auto& c : g.objects_of(sig_node, v::hint_recommendsContext)) {
    if (g.match(c, std::nullopt, std::nullopt).empty())
      throw ModelError(ModelError::Kind::DanglingReference,
                       "recommended context " + detail::node_key(c) + " has no triples");
    if (rdf::is_iri(c)) sig.recommended_contexts.push_back(ShapeRef{rdf::iri_of(c)});
  }
  std::sort(sig.recommended_contexts.begin(), sig.recommended_contexts.end());
  if (auto sal = g.object_of(sig_node, v::hint_hasSalience)) {
    if (rdf::is_literal(sal.value())) {
      try {
        double d = std::stod(std::get<rdf::Literal>(*sal).lexical);
        if (d >= 0) sig.salience = d;
      } catch (const std::exception&) {
        // malformed salience is treated as absent; it only affects ordering
      }
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Profile reading
// ---------------------------------------------------------------------------

namespace detail {

// Nodes reachable from a shape through structural shape predicates. Value
// positions (targets, sh:hasValue, sh:class objects) are not traversed, so
// data nodes mentioned by shapes stay in the situation.
inline void collect_shape_nodes(const Graph& g, const Term& node, std::set<Term>& seen) {
  if (!seen.insert(node).second) return;
  for (const auto& c : g.objects_of(node, v::sh_property)) collect_shape_nodes(g, c, seen);
  for (const auto& c : g.objects_of(node, v::sh_node)) collect_shape_nodes(g, c, seen);
  for (const auto& c : g.objects_of(node, v::sh_qualifiedValueShape))
    collect_shape_nodes(g, c, seen);
}

inline void collect_schema_nodes(const Graph& g, const Term& node, std::set<Term>& seen) {
  if (!seen.insert(node).second) return;
  for (const auto& c : g.objects_of(node, v::js_properties)) collect_schema_nodes(g, c, seen);
}

inline void collect_list_nodes(const Graph& g, const Term& head, std::set<Term>& seen) {
  Term node = head;
  while (!(rdf::is_iri(node) && rdf::iri_of(node) == rdf::rdf_nil)) {
    if (!seen.insert(node).second) return;
    auto rest = g.object_of(node, rdf::rdf_rest);
    if (!rest) return;
    node = *rest;
  }
}

inline void collect_condition_nodes(const Graph& g, const Term& node, std::set<Term>& seen) {
  if (!seen.insert(node).second) return;
  for (const auto& m : container_members(g, node)) {
    seen.insert(m);
    if (auto inner = g.object_of(m, v::pddl_arg)) {
      seen.insert(*inner);
      if (auto args = g.object_of(*inner, v::pddl_args)) collect_list_nodes(g, args.value(), seen);
    }
    if (auto args = g.object_of(m, v::pddl_args)) collect_list_nodes(g, args.value(), seen);
  }
  if (auto inner = g.object_of(node, v::pddl_arg)) {
    seen.insert(*inner);
    if (auto args = g.object_of(*inner, v::pddl_args)) collect_list_nodes(g, args.value(), seen);
  }
  if (auto args = g.object_of(node, v::pddl_args)) collect_list_nodes(g, args.value(), seen);
}

// Everything a signifier's subtree owns: the signifier node, ability nodes,
// the behaviour specification with forms, input, schemas and PDDL structure.
inline void collect_signifier_nodes(const Graph& g, const Term& sig_node, std::set<Term>& seen) {
  seen.insert(sig_node);
  for (const auto& ab : g.objects_of(sig_node, v::hint_recommendsAbility)) seen.insert(ab);
  auto spec = g.object_of(sig_node, v::hint_signifies);
  if (!spec) return;
  seen.insert(*spec);
  for (const auto& f : g.objects_of(*spec, v::hint_hasForm)) seen.insert(f);
  for (const auto& in : g.objects_of(*spec, v::hint_expects)) {
    seen.insert(in);
    for (const auto& sch : g.objects_of(in, v::hint_hasSchema))
      collect_schema_nodes(g, sch, seen);
  }
  if (auto seq = g.object_of(*spec, v::pddl_parameters)) {
    seen.insert(*seq);
    for (const auto& p : container_members(g, *seq)) {
      seen.insert(p);
      for (const auto& sch : g.objects_of(p, v::hint_hasSchema))
        collect_schema_nodes(g, sch, seen);
    }
  }
  if (auto pre = g.object_of(*spec, v::pddl_precondition))
    collect_condition_nodes(g, *pre, seen);
  if (auto eff = g.object_of(*spec, v::pddl_effect)) collect_condition_nodes(g, *eff, seen);
}

inline Graph closure_graph(const Graph& g, const std::set<Term>& nodes) {
  Graph out;
  for (const auto& t : g)
    if (nodes.count(t.s)) out.insert(t);
  return out;
}

}  // namespace detail

inline ArtifactProfile read_artifact_profile(const Graph& g) {
  ArtifactProfile p;
  auto profile_nodes = g.subjects_of_type(v::hmas_ArtifactProfile);
  if (profile_nodes.empty())
    throw ModelError(ModelError::Kind::NoProfileNode, "no artifact profile node");
  if (profile_nodes.size() > 1)
    throw ModelError(ModelError::Kind::MultipleProfileNodes,
                     "more than one artifact profile node");
  const Term& pnode = profile_nodes.front();
  if (!rdf::is_iri(pnode))
    throw ModelError(ModelError::Kind::NoProfileNode, "profile node must be an IRI");
  p.id = rdf::iri_of(pnode);
  auto of = g.object_of(pnode, v::hmas_isProfileOf);
  if (!of || !rdf::is_iri(*of))
    throw ModelError(ModelError::Kind::DanglingReference,
                     "profile " + p.id + " without hmas:isProfileOf");
  p.artifact_iri = rdf::iri_of(*of);
  if (auto w = g.object_of(pnode, v::hmas_isContainedBy))
    if (rdf::is_iri(*w)) p.workspace_iri = rdf::iri_of(*w);

  std::set<Term> consumed;
  consumed.insert(pnode);
  for (const auto& sig_node : g.subjects_of_type(v::hmas_Signifier)) {
    if (!rdf::is_iri(sig_node))
      throw ModelError(ModelError::Kind::DanglingReference, "blank signifier node");
    p.signifiers.push_back(read_signifier(g, rdf::iri_of(sig_node)));
    detail::collect_signifier_nodes(g, sig_node, consumed);
    for (const auto& c : g.objects_of(sig_node, v::hint_recommendsContext)) {
      std::set<Term> shape_nodes;
      detail::collect_shape_nodes(g, c, shape_nodes);
      if (rdf::is_iri(c))
        p.context_defs[rdf::iri_of(c)] = detail::closure_graph(g, shape_nodes);
      for (const auto& n : shape_nodes) consumed.insert(n);
    }
  }
  for (const auto& t : g)
    if (!consumed.count(t.s)) p.situation.insert(t);
  for (const auto& [name, expansion] : g.prefixes()) p.situation.set_prefix(name, expansion);
  return p;
}

inline AgentProfile read_agent_profile(const Graph& g) {
  AgentProfile p;
  auto profile_nodes = g.subjects_of_type(v::hmas_AgentProfile);
  if (profile_nodes.empty())
    throw ModelError(ModelError::Kind::NoProfileNode, "no agent profile node");
  if (profile_nodes.size() > 1)
    throw ModelError(ModelError::Kind::MultipleProfileNodes,
                     "more than one agent profile node");
  const Term& pnode = profile_nodes.front();
  if (!rdf::is_iri(pnode))
    throw ModelError(ModelError::Kind::NoProfileNode, "profile node must be an IRI");
  p.id = rdf::iri_of(pnode);
  auto of = g.object_of(pnode, v::hmas_isProfileOf);
  if (!of)
    throw ModelError(ModelError::Kind::DanglingReference,
                     "profile " + p.id + " without hmas:isProfileOf");
  if (rdf::is_iri(*of)) p.agent_iri = rdf::iri_of(*of);
  if (auto w = g.object_of(pnode, v::hmas_isContainedBy))
    if (rdf::is_iri(*w)) p.workspace_iri = rdf::iri_of(*w);

  std::set<Term> consumed;
  consumed.insert(pnode);
  for (const auto& ab : g.objects_of(*of, v::hint_hasAbility)) {
    consumed.insert(ab);
    auto types = g.objects_of(ab, rdf::rdf_type);
    if (types.empty() && rdf::is_iri(ab)) p.abilities.insert(rdf::iri_of(ab));
    for (const auto& t : types)
      if (rdf::is_iri(t)) p.abilities.insert(rdf::iri_of(t));
  }
  for (const auto& t : g) {
    if (consumed.count(t.s)) continue;
    if (t.s == *of && rdf::is_iri(t.p) && rdf::iri_of(t.p) == v::hint_hasAbility) continue;
    p.situation.insert(t);
  }
  for (const auto& [name, expansion] : g.prefixes()) p.situation.set_prefix(name, expansion);
  return p;
}

// ---------------------------------------------------------------------------
// Profile writing
// ---------------------------------------------------------------------------

namespace detail {

class BlankAllocator {
 public:
  Term fresh() { return rdf::blank("w#" + std::to_string(n_++)); }

 private:
  int n_ = 0;
};

inline Term schema_node(const InputSchema& s, BlankAllocator& alloc,
                        std::map<const InputSchema*, Term>& memo) {
  auto it = memo.find(&s);
  if (it != memo.end()) return it->second;
  Term node = s.id.empty() ? alloc.fresh() : rdf::iri(s.id);
  memo[&s] = node;
  return node;
}

inline void write_schema(Graph& g, const InputSchema& s, const Term& node,
                         BlankAllocator& alloc, std::map<const InputSchema*, Term>& memo) {
  switch (s.kind) {
    case InputSchema::Kind::Object: g.insert(node, rdf::iri(rdf::rdf_type), rdf::iri(v::js_ObjectSchema)); break;
    case InputSchema::Kind::Integer: g.insert(node, rdf::iri(rdf::rdf_type), rdf::iri(v::js_IntegerSchema)); break;
    case InputSchema::Kind::String: g.insert(node, rdf::iri(rdf::rdf_type), rdf::iri(v::js_StringSchema)); break;
  }
  if (!s.property_name.empty())
    g.insert(node, rdf::iri(v::js_propertyName), rdf::lit(s.property_name));
  for (const auto& child : s.properties) {
    Term cnode = schema_node(child, alloc, memo);
    g.insert(node, rdf::iri(v::js_properties), cnode);
    write_schema(g, child, cnode, alloc, memo);
  }
  for (const auto& r : s.required) g.insert(node, rdf::iri(v::js_required), rdf::lit(r));
  for (const auto& e : s.enum_values) g.insert(node, rdf::iri(v::js_enum), e);
  if (s.minimum) g.insert(node, rdf::iri(v::js_minimum), rdf::int_lit(*s.minimum));
  if (s.maximum) g.insert(node, rdf::iri(v::js_maximum), rdf::int_lit(*s.maximum));
}

inline Term write_atom(Graph& g, const PddlAtom& atom, BlankAllocator& alloc) {
  Term inner = alloc.fresh();
  g.insert(inner, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_Atom));
  g.insert(inner, rdf::iri(v::pddl_predicate), rdf::iri(atom.predicate));
  if (!atom.args.empty()) {
    Term head = alloc.fresh();
    Term node = head;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      const std::string& a = atom.args[i];
      Term value = (!a.empty() && a[0] == '?') ? rdf::lit(a) : rdf::iri(a);
      g.insert(node, rdf::iri(rdf::rdf_first), value);
      Term rest = (i + 1 == atom.args.size()) ? rdf::iri(rdf::rdf_nil) : alloc.fresh();
      g.insert(node, rdf::iri(rdf::rdf_rest), rest);
      node = rest;
    }
    g.insert(inner, rdf::iri(v::pddl_args), head);
  }
  if (!atom.negated) return inner;
  Term neg = alloc.fresh();
  g.insert(neg, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_Not));
  g.insert(neg, rdf::iri(v::pddl_arg), inner);
  return neg;
}

inline Term write_condition(Graph& g, const std::vector<PddlAtom>& atoms,
                            BlankAllocator& alloc) {
  Term conj = alloc.fresh();
  g.insert(conj, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_And));
  int n = 1;
  for (const auto& atom : atoms)
    g.insert(conj, rdf::iri(rdf::ns::rdf + "_" + std::to_string(n++)), write_atom(g, atom, alloc));
  return conj;
}

inline void write_signifier(Graph& g, const Signifier& sig, BlankAllocator& alloc) {
  Term sig_node = rdf::iri(sig.id);
  g.insert(sig_node, rdf::iri(rdf::rdf_type), rdf::iri(v::hmas_Signifier));
  for (const auto& ability : sig.recommended_abilities) {
    Term ab = alloc.fresh();
    g.insert(sig_node, rdf::iri(v::hint_recommendsAbility), ab);
    g.insert(ab, rdf::iri(rdf::rdf_type), rdf::iri(ability));
  }
  for (const auto& c : sig.recommended_contexts)
    g.insert(sig_node, rdf::iri(v::hint_recommendsContext), rdf::iri(c.iri));
  if (sig.salience) {
    double d = *sig.salience;
    if (d == static_cast<double>(static_cast<std::int64_t>(d)))
      g.insert(sig_node, rdf::iri(v::hint_hasSalience),
               rdf::int_lit(static_cast<std::int64_t>(d)));
    else {
      std::string lex = std::to_string(d);
      while (!lex.empty() && lex.back() == '0') lex.pop_back();
      if (!lex.empty() && lex.back() == '.') lex.pop_back();
      g.insert(sig_node, rdf::iri(v::hint_hasSalience),
               rdf::lit(lex, rdf::ns::xsd + "decimal"));
    }
  }
  const ActionSpecification& spec = sig.spec;
  Term spec_node = spec.id.empty() ? alloc.fresh() : rdf::iri(spec.id);
  g.insert(sig_node, rdf::iri(v::hint_signifies), spec_node);
  g.insert(spec_node, rdf::iri(rdf::rdf_type), rdf::iri(v::hint_ActionSpecification));
  for (const auto& ty : spec.action_types)
    g.insert(spec_node, rdf::iri(rdf::rdf_type), rdf::iri(ty));
  for (const auto& f : spec.forms) {
    Term fnode = alloc.fresh();
    g.insert(spec_node, rdf::iri(v::hint_hasForm), fnode);
    g.insert(fnode, rdf::iri(v::hctl_hasTarget), rdf::iri(f.target));
    g.insert(fnode, rdf::iri(v::hctl_forContentType), rdf::lit(f.content_type));
    if (f.method) g.insert(fnode, rdf::iri(v::htv_methodName), rdf::lit(*f.method));
  }
  std::map<const InputSchema*, Term> schema_memo;
  if (spec.input) {
    Term in = alloc.fresh();
    g.insert(spec_node, rdf::iri(v::hint_expects), in);
    g.insert(in, rdf::iri(rdf::rdf_type), rdf::iri(v::hint_Input));
    Term sch = schema_node(*spec.input, alloc, schema_memo);
    g.insert(in, rdf::iri(v::hint_hasSchema), sch);
    write_schema(g, *spec.input, sch, alloc, schema_memo);
  }
  if (spec.pddl) {
    const PddlActionSpec& a = *spec.pddl;
    g.insert(spec_node, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_Action));
    g.insert(spec_node, rdf::iri(v::pddl_action_label), rdf::lit(a.label));
    if (!a.parameters.empty()) {
      Term seq = alloc.fresh();
      g.insert(spec_node, rdf::iri(v::pddl_parameters), seq);
      g.insert(seq, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_Param_seq));
      int n = 1;
      for (const auto& p : a.parameters) {
        Term pn = p.id.empty() ? alloc.fresh() : rdf::iri(p.id);
        g.insert(seq, rdf::iri(rdf::ns::rdf + "_" + std::to_string(n++)), pn);
        g.insert(pn, rdf::iri(rdf::rdf_type), rdf::iri(v::pddl_Param));
        g.insert(pn, rdf::iri(v::pddl_name), rdf::lit(p.name));
        if (!p.type.empty()) g.insert(pn, rdf::iri(v::drs_type), rdf::iri(p.type));
        if (p.schema) {
          // parameters share schema nodes with the input object's members
          Term sch = p.schema->id.empty() ? alloc.fresh() : rdf::iri(p.schema->id);
          g.insert(pn, rdf::iri(v::hint_hasSchema), sch);
          if (p.schema->id.empty()) {
            std::map<const InputSchema*, Term> local;
            local[&*p.schema] = sch;
            write_schema(g, *p.schema, sch, alloc, local);
          }
        }
      }
    }
    if (!a.preconditions.empty())
      g.insert(spec_node, rdf::iri(v::pddl_precondition), write_condition(g, a.preconditions, alloc));
    if (!a.effects.empty())
      g.insert(spec_node, rdf::iri(v::pddl_effect), write_condition(g, a.effects, alloc));
  }
}

}  // namespace detail

inline Graph write_artifact_profile(const ArtifactProfile& p) {
  Graph g;
  g.merge(p.situation);
  detail::BlankAllocator alloc;
  Term pnode = rdf::iri(p.id);
  g.insert(pnode, rdf::iri(rdf::rdf_type), rdf::iri(v::hmas_ArtifactProfile));
  g.insert(pnode, rdf::iri(v::hmas_isProfileOf), rdf::iri(p.artifact_iri));
  if (!p.workspace_iri.empty())
    g.insert(pnode, rdf::iri(v::hmas_isContainedBy), rdf::iri(p.workspace_iri));
  for (const auto& sig : p.signifiers) {
    detail::write_signifier(g, sig, alloc);
    for (const auto& c : sig.recommended_contexts) {
      auto it = p.context_defs.find(c.iri);
      if (it != p.context_defs.end()) g.merge(it->second);
    }
  }
  return g;
}

}  // namespace hypersig::model
