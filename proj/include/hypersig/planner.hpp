#pragma once

// STRIPS-style planning over PDDL-annotated signifiers: schemas are lifted
// from behaviour specifications, grounded over a typed object universe, and
// searched breadth-first for a shortest plan. Ground actions carry the HTTP
// form and JSON input needed to execute them.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "model.hpp"
#include "vocab.hpp"

namespace hypersig::planner {

namespace v = hypersig::vocab;
using nlohmann::json;

// A ground value: an individual's IRI or a plain integer.
using Value = std::variant<std::string, std::int64_t>;

inline std::string value_repr(const Value& val) {
  if (std::holds_alternative<std::int64_t>(val))
    return std::to_string(std::get<std::int64_t>(val));
  return std::get<std::string>(val);
}

struct GroundAtom {
  std::string predicate;
  std::vector<Value> args;
  auto operator<=>(const GroundAtom&) const = default;
};

using State = std::set<GroundAtom>;

inline std::string atom_repr(const GroundAtom& a) {
  std::string s = a.predicate.substr(a.predicate.find('#') + 1) + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i)
    s += (i ? "," : "") + value_repr(a.args[i]);
  return s + ")";
}

struct ActionSchema {
  std::string label;
  std::vector<model::PddlParameter> parameters;
  std::vector<model::PddlAtom> preconditions;
  std::vector<model::PddlAtom> effects;
  model::Form form;  // the form agents drive to execute this action
  std::optional<model::InputSchema> input;
  std::string signifier;  // provenance, for traces
};

struct GroundAction {
  std::string label;
  std::vector<Value> args;  // parallel to the schema's parameters
  State pre_pos;
  State pre_neg;
  State add;
  State del;
  model::Form form;
  json input;  // request body built from schema-bound parameters

  std::string repr() const {
    std::string s = label + "(";
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + value_repr(args[i]);
    return s + ")";
  }
};

class DomainError : public std::runtime_error {
 public:
  enum class Kind { DuplicateAction, EmptyDomain };
  DomainError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  Kind kind;
};

class NoPlanError : public std::runtime_error {
 public:
  explicit NoPlanError(std::size_t explored)
      : std::runtime_error("no plan found after exploring " + std::to_string(explored) +
                           " states"),
        explored(explored) {}
  std::size_t explored;
};

struct DomainBuild {
  std::vector<ActionSchema> schemas;
  std::vector<std::string> warnings;
};

// Lifts action schemas out of signifiers. Signifiers without a PDDL
// annotation are skipped with a warning; duplicate action labels are an
// error because execution bindings would be ambiguous.
inline DomainBuild strips_build_domain(const std::vector<model::Signifier>& signifiers) {
  DomainBuild out;
  std::set<std::string> labels;
  for (const auto& sig : signifiers) {
    if (!sig.spec.pddl) {
      out.warnings.push_back("signifier " + sig.id + " has no planning annotation; skipped");
      continue;
    }
    const model::PddlActionSpec& a = *sig.spec.pddl;
    if (!labels.insert(a.label).second)
      throw DomainError(DomainError::Kind::DuplicateAction,
                        "duplicate action label '" + a.label + "'");
    ActionSchema schema;
    schema.label = a.label;
    schema.parameters = a.parameters;
    schema.preconditions = a.preconditions;
    schema.effects = a.effects;
    schema.form = sig.spec.forms.front();
    schema.input = sig.spec.input;
    schema.signifier = sig.id;
    out.schemas.push_back(std::move(schema));
  }
  return out;
}

// Typed object universe, usually harvested from a situation graph.
struct Objects {
  std::map<std::string, std::vector<Value>> by_type;
};

inline Objects objects_from_situation(const rdf::Graph& situation) {
  Objects o;
  for (const auto& t : situation.match(std::nullopt, rdf::iri(rdf::rdf_type), std::nullopt)) {
    if (!rdf::is_iri(t.s) || !rdf::is_iri(t.o)) continue;
    o.by_type[rdf::iri_of(t.o)].push_back(rdf::iri_of(t.s));
  }
  for (auto& [ty, vals] : o.by_type) std::sort(vals.begin(), vals.end());
  return o;
}

namespace detail {

// Candidate values for one parameter: enum members when the parameter is
// bound to an enumerated body property, otherwise every object of its type.
inline std::vector<Value> candidates(const model::PddlParameter& p, const Objects& objects) {
  if (p.schema && !p.schema->enum_values.empty()) {
    std::vector<Value> out;
    for (const auto& term : p.schema->enum_values) {
      if (auto n = model::detail::integer_of(term)) out.push_back(*n);
      else out.push_back(model::detail::lexical_of(term));
    }
    return out;
  }
  auto it = objects.by_type.find(p.type);
  return it == objects.by_type.end() ? std::vector<Value>{} : it->second;
}

inline GroundAtom ground_atom(const model::PddlAtom& atom,
                              const std::map<std::string, Value>& binding) {
  GroundAtom g;
  g.predicate = atom.predicate;
  for (const auto& arg : atom.args) {
    if (!arg.empty() && arg[0] == '?') g.args.push_back(binding.at(arg));
    else g.args.push_back(arg);
  }
  return g;
}

}  // namespace detail

// Cartesian grounding over type-compatible values. Instantiations whose add
// and delete effects overlap would be degenerate no-ops and are dropped.
inline std::vector<GroundAction> ground(const std::vector<ActionSchema>& schemas,
                                        const Objects& objects) {
  std::vector<GroundAction> out;
  for (const auto& schema : schemas) {
    std::vector<std::vector<Value>> cands;
    for (const auto& p : schema.parameters) cands.push_back(detail::candidates(p, objects));
    std::vector<std::size_t> idx(cands.size(), 0);
    bool unsatisfiable = false;
    for (const auto& c : cands)
      if (c.empty()) unsatisfiable = true;
    if (unsatisfiable) continue;  // a type with no objects grounds to nothing
    while (true) {
      std::map<std::string, Value> binding;
      GroundAction act;
      act.label = schema.label;
      act.form = schema.form;
      act.input = json::object();
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const Value& val = cands[i][idx[i]];
        binding[schema.parameters[i].name] = val;
        act.args.push_back(val);
        const auto& p = schema.parameters[i];
        if (p.schema && !p.schema->property_name.empty()) {
          if (std::holds_alternative<std::int64_t>(val))
            act.input[p.schema->property_name] = std::get<std::int64_t>(val);
          else
            act.input[p.schema->property_name] = std::get<std::string>(val);
        }
      }
      for (const auto& a : schema.preconditions)
        (a.negated ? act.pre_neg : act.pre_pos).insert(detail::ground_atom(a, binding));
      for (const auto& a : schema.effects)
        (a.negated ? act.del : act.add).insert(detail::ground_atom(a, binding));
      bool degenerate = false;
      for (const auto& a : act.add)
        if (act.del.count(a)) degenerate = true;
      if (!degenerate) out.push_back(std::move(act));
      // advance the odometer
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < cands[i].size()) break;
        idx[i] = 0;
      }
      if (idx.empty() || i == idx.size()) break;
    }
  }
  return out;
}

inline bool applicable(const GroundAction& a, const State& s) {
  for (const auto& atom : a.pre_pos)
    if (!s.count(atom)) return false;
  for (const auto& atom : a.pre_neg)
    if (s.count(atom)) return false;
  return true;
}

inline State apply(const GroundAction& a, const State& s) {
  State next = s;
  for (const auto& atom : a.del) next.erase(atom);
  for (const auto& atom : a.add) next.insert(atom);
  return next;
}

inline bool satisfies(const State& s, const State& goal) {
  for (const auto& atom : goal)
    if (!s.count(atom)) return false;
  return true;
}

// Uniform-cost breadth-first search; the returned plan is length-minimal.
// Throws NoPlanError when the goal is unreachable or the state bound trips.
inline std::vector<GroundAction> plan(const std::vector<GroundAction>& actions,
                                      const State& initial, const State& goal,
                                      std::size_t max_states = 100000) {
  if (satisfies(initial, goal)) return {};
  std::map<State, std::pair<State, std::size_t>> parent;  // state -> (prev, action idx)
  std::set<State> visited{initial};
  std::deque<State> queue{initial};
  while (!queue.empty()) {
    State current = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (!applicable(actions[i], current)) continue;
      State next = planner::apply(actions[i], current);  // qualified: ADL would also find std::apply
      if (visited.count(next)) continue;
      if (visited.size() >= max_states) throw NoPlanError(visited.size());
      visited.insert(next);
      parent[next] = {current, i};
      if (satisfies(next, goal)) {
        std::vector<GroundAction> steps;
        State at = next;
        while (!(at == initial)) {
          auto& [prev, idx] = parent.at(at);
          steps.push_back(actions[idx]);
          at = prev;
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
      }
      queue.push_back(next);
    }
  }
  throw NoPlanError(visited.size());
}

// The fixed reading of situation triples as planning atoms; the table is
// documented in docs/domain-mapping.md.
inline State state_from_situation(const rdf::Graph& situation) {
  State s;
  using rdf::iri;
  using rdf::iri_of;
  for (const auto& arm : situation.subjects_of_type(v::manu_RoboticArm)) {
    for (const auto& val : situation.objects_of(arm, v::manu_hasGripperValue)) {
      auto n = model::detail::integer_of(val);
      if (n && *n == 500) s.insert({v::manu_gripperOpen, {}});
    }
    for (const auto& loc : situation.objects_of(arm, v::manu_isAt))
      if (rdf::is_iri(loc)) s.insert({v::manu_armAt, {iri_of(loc)}});
    for (const auto& item : situation.objects_of(arm, v::manu_holds))
      if (rdf::is_iri(item)) s.insert({v::manu_holding, {iri_of(item)}});
  }
  for (const auto& item : situation.subjects_of_type(v::manu_Item)) {
    if (!rdf::is_iri(item)) continue;
    for (const auto& loc : situation.objects_of(item, v::manu_hasLocation))
      if (rdf::is_iri(loc)) s.insert({v::manu_itemAt, {iri_of(item), iri_of(loc)}});
  }
  for (const auto& t :
       situation.match(std::nullopt, iri(v::manu_inRangeOf), std::nullopt))
    if (rdf::is_iri(t.s)) s.insert({v::manu_inRange, {iri_of(t.s)}});
  return s;
}

}  // namespace hypersig::planner
