#pragma once

// Simulated robotic arm: a small state machine (base position, gripper,
// held item) whose state is projected back into the artifact's situation
// graph after every successful command, so fresh profile reads always
// describe the current world.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "rdf.hpp"
#include "vocab.hpp"

namespace hypersig::arm {

namespace v = hypersig::vocab;

constexpr std::int64_t kGripperOpen = 500;
constexpr std::int64_t kGripperClosed = 0;

struct ArmState {
  std::string arm_iri;
  std::int64_t gripper = kGripperOpen;
  std::string at;                                      // current base location
  std::optional<std::string> holding;                  // item in the gripper
  std::map<std::string, std::string> item_locations;   // items resting somewhere
  std::set<std::string> in_range;                      // reachable locations
  std::set<std::string> tokens;                        // valid operator tokens
};

// The subject typed as a robotic arm, if the situation describes one.
inline std::optional<std::string> find_arm(const rdf::Graph& situation) {
  auto arms = situation.subjects_of_type(v::manu_RoboticArm);
  if (arms.empty()) return std::nullopt;
  return rdf::iri_of(arms.front());
}

inline std::optional<std::int64_t> int_object(const rdf::Graph& g, const rdf::Term& s,
                                              const std::string& p) {
  if (auto t = g.object_of(s, p); t && rdf::is_literal(*t)) {
    const auto& lit = std::get<rdf::Literal>(*t);
    if (lit.datatype == rdf::xsd_integer) return std::stoll(rdf::canonical_lexical(lit));
  }
  return std::nullopt;
}

inline ArmState from_situation(const rdf::Graph& situation, const std::string& arm_iri) {
  ArmState s;
  s.arm_iri = arm_iri;
  const rdf::Term arm = rdf::iri(arm_iri);
  if (auto gv = int_object(situation, arm, v::manu_hasGripperValue)) s.gripper = *gv;
  if (auto at = situation.object_of(arm, v::manu_isAt); at && rdf::is_iri(*at))
    s.at = rdf::iri_of(*at);
  if (auto h = situation.object_of(arm, v::manu_holds); h && rdf::is_iri(*h))
    s.holding = rdf::iri_of(*h);
  for (const auto& item : situation.subjects_of_type(v::manu_Item)) {
    if (!rdf::is_iri(item)) continue;
    if (auto loc = situation.object_of(item, v::manu_hasLocation); loc && rdf::is_iri(*loc))
      s.item_locations[rdf::iri_of(item)] = rdf::iri_of(*loc);
  }
  for (const auto& t :
       situation.match(std::nullopt, rdf::iri(v::manu_inRangeOf), rdf::iri(arm_iri)))
    if (rdf::is_iri(t.s)) s.in_range.insert(rdf::iri_of(t.s));
  return s;
}

// Rebuilds the situation from a template: dynamic triples (gripper value,
// base position, held item, item locations) are replaced by the live state;
// everything else is carried over untouched.
inline rdf::Graph apply_state(const rdf::Graph& original, const ArmState& s) {
  rdf::Graph out;
  for (const auto& [name, expansion] : original.prefixes()) out.set_prefix(name, expansion);
  if (original.base()) out.set_base(*original.base());
  std::set<std::string> items;
  for (const auto& item : original.subjects_of_type(v::manu_Item))
    if (rdf::is_iri(item)) items.insert(rdf::iri_of(item));
  for (const auto& t : original.triples()) {
    if (rdf::is_iri(t.s) && rdf::iri_of(t.s) == s.arm_iri && rdf::is_iri(t.p)) {
      const std::string& p = rdf::iri_of(t.p);
      if (p == v::manu_hasGripperValue || p == v::manu_isAt || p == v::manu_holds) continue;
    }
    if (rdf::is_iri(t.s) && items.count(rdf::iri_of(t.s)) && rdf::is_iri(t.p) &&
        rdf::iri_of(t.p) == v::manu_hasLocation)
      continue;
    out.insert(t);
  }
  out.insert({rdf::iri(s.arm_iri), rdf::iri(v::manu_hasGripperValue), rdf::int_lit(s.gripper)});
  if (!s.at.empty())
    out.insert({rdf::iri(s.arm_iri), rdf::iri(v::manu_isAt), rdf::iri(s.at)});
  if (s.holding)
    out.insert({rdf::iri(s.arm_iri), rdf::iri(v::manu_holds), rdf::iri(*s.holding)});
  for (const auto& [item, loc] : s.item_locations)
    out.insert({rdf::iri(item), rdf::iri(v::manu_hasLocation), rdf::iri(loc)});
  return out;
}

// Outcome of a commanded action, expressed as an HTTP status plus detail.
struct CommandResult {
  int status = 200;
  std::string message;
  bool ok() const { return status >= 200 && status < 300; }
};

// Gripper command. 0 closes (grasping whatever rests at the current
// location), 500 opens (releasing a held item onto the current location).
// Values outside the device's two positions are rejected as unprocessable;
// closing over an empty spot is a conflict with the world state.
inline CommandResult set_gripper(ArmState& s, std::int64_t value) {
  if (value != kGripperOpen && value != kGripperClosed)
    return {422, "gripper value must be 0 or 500"};
  if (value == kGripperClosed) {
    if (s.holding) return {200, "already holding " + *s.holding};
    std::optional<std::string> found;
    for (const auto& [item, loc] : s.item_locations)
      if (loc == s.at) {
        found = item;
        break;
      }
    if (!found) return {409, "nothing to grasp at " + s.at};
    s.item_locations.erase(*found);
    s.holding = found;
    s.gripper = kGripperClosed;
    return {200, "grasped " + *found};
  }
  if (s.holding) {
    s.item_locations[*s.holding] = s.at;
    s.holding.reset();
  }
  s.gripper = kGripperOpen;
  return {200, "gripper open"};
}

// Base movement; targets must be within the arm's reach. A held item
// travels with the gripper.
inline CommandResult move_base(ArmState& s, const std::string& target) {
  if (!s.in_range.count(target)) return {422, "target out of range: " + target};
  s.at = target;
  return {200, "base at " + target};
}

}  // namespace hypersig::arm
