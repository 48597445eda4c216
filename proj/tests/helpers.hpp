#pragma once

// Shared helpers for the test suite: fixture loading, small Turtle parsing
// shorthands, and an independent breadth-first planning oracle used to
// cross-check the planner.

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <hypersig/rdf.hpp>
#include <hypersig/turtle.hpp>

namespace testutil {

inline std::filesystem::path fixtures_dir() { return HYPERSIG_FIXTURES_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string fixture_text(const std::string& name) {
  return slurp(fixtures_dir() / name);
}

inline hypersig::rdf::Graph parse_fixture(const std::string& name, const std::string& base) {
  return hypersig::turtle::parse(fixture_text(name), base);
}

// Common prefix header for inline Turtle snippets in tests.
inline std::string prefixed(const std::string& body) {
  return "@prefix hmas: <https://purl.org/hmas/> .\n"
         "@prefix hint: <https://purl.org/hmas/interaction#> .\n"
         "@prefix sh: <http://www.w3.org/ns/shacl#> .\n"
         "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
         "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
         "@prefix prs: <https://purl.org/hmas/prs#> .\n"
         "@prefix manu: <https://purl.org/hmas/manufacturing#> .\n"
         "@prefix hctl: <https://www.w3.org/2019/wot/hypermedia#> .\n"
         "@prefix js: <https://www.w3.org/2019/wot/json-schema#> .\n"
         "@prefix pddl: <http://www.cs.yale.edu/homes/dvm/daml/pddlonto.daml#> .\n"
         "@prefix drs: <http://www.cs.yale.edu/homes/dvm/daml/drsonto.daml#> .\n"
         "@prefix strips: <https://purl.org/hmas/strips#> .\n"
         "@prefix ex: <http://test.example/> .\n" +
         body;
}

inline hypersig::rdf::Graph parse_snippet(const std::string& body,
                                          const std::string& base = "http://test.example/doc") {
  return hypersig::turtle::parse(prefixed(body), base);
}

// ---------------------------------------------------------------------------
// Independent planning oracle. States are sets of atom strings; actions are
// plain precondition/effect string sets. Breadth-first search, no sharing of
// code or types with the planner under test.
// ---------------------------------------------------------------------------

struct OracleAction {
  std::string name;
  std::set<std::string> pre_pos;
  std::set<std::string> pre_neg;
  std::set<std::string> add;
  std::set<std::string> del;
};

using OracleState = std::set<std::string>;

inline bool oracle_applicable(const OracleAction& a, const OracleState& s) {
  for (const auto& x : a.pre_pos)
    if (!s.count(x)) return false;
  for (const auto& x : a.pre_neg)
    if (s.count(x)) return false;
  return true;
}

inline OracleState oracle_apply(const OracleAction& a, const OracleState& s) {
  OracleState next = s;
  for (const auto& x : a.del) next.erase(x);
  for (const auto& x : a.add) next.insert(x);
  return next;
}

inline bool oracle_satisfies(const OracleState& s, const OracleState& goal) {
  for (const auto& x : goal)
    if (!s.count(x)) return false;
  return true;
}

// Shortest plan as a sequence of action names, or nullopt if unreachable.
inline std::optional<std::vector<std::string>> oracle_plan(
    const std::vector<OracleAction>& actions, const OracleState& initial,
    const OracleState& goal) {
  if (oracle_satisfies(initial, goal)) return std::vector<std::string>{};
  std::vector<std::pair<OracleState, std::vector<std::string>>> frontier{{initial, {}}};
  std::set<OracleState> visited{initial};
  while (!frontier.empty()) {
    std::vector<std::pair<OracleState, std::vector<std::string>>> next_frontier;
    for (const auto& [state, path] : frontier) {
      for (const auto& a : actions) {
        if (!oracle_applicable(a, state)) continue;
        OracleState next = oracle_apply(a, state);
        if (!visited.insert(next).second) continue;
        std::vector<std::string> next_path = path;
        next_path.push_back(a.name);
        if (oracle_satisfies(next, goal)) return next_path;
        next_frontier.emplace_back(std::move(next), std::move(next_path));
      }
    }
    frontier = std::move(next_frontier);
  }
  return std::nullopt;
}

}  // namespace testutil
