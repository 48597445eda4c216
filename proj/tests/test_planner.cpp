// Planning: domain extraction from signifiers, situation-to-state reading,
// exhaustive grounding checked against a hand-written table, breadth-first
// search validated by an independent oracle, and failure bounds.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <hypersig/model.hpp>
#include <hypersig/planner.hpp>
#include <hypersig/vocab.hpp>

#include "helpers.hpp"
#include "planner_oracle.hpp"

using namespace hypersig;
namespace v = hypersig::vocab;

namespace {

constexpr const char* kArmBase = "http://t.example/workspaces/wksp1/artifacts/leubot";

std::string frag(const std::string& name) { return std::string(kArmBase) + "#" + name; }

model::ArtifactProfile arm() {
  return model::read_artifact_profile(testutil::parse_fixture("arm-profile.ttl", kArmBase));
}

using testutil::oracle_atom;
using testutil::oracle_state;

std::vector<testutil::OracleAction> oracle_domain() { return testutil::oracle_domain(kArmBase); }

}  // namespace

TEST_CASE("domain build lifts exactly the annotated signifiers") {
  auto p = arm();
  auto build = planner::strips_build_domain(p.signifiers);
  CHECK(build.warnings.size() == 7);  // the seven non-annotated signifiers
  REQUIRE(build.schemas.size() == 4);
  std::set<std::string> labels;
  for (const auto& s : build.schemas) labels.insert(s.label);
  CHECK(labels == std::set<std::string>{"login", "moveTo", "closeGripper", "openGripper"});
  for (const auto& s : build.schemas) {
    INFO(s.label);
    CHECK_FALSE(s.form.target.empty());
    CHECK(s.signifier.substr(0, s.signifier.find('#')) == kArmBase);
  }
}

TEST_CASE("duplicate action labels are rejected") {
  auto p = arm();
  auto is_smove = [](const model::Signifier& s) {
    return s.id.find("#s-move") != std::string::npos;
  };
  auto it = std::find_if(p.signifiers.begin(), p.signifiers.end(), is_smove);
  REQUIRE(it != p.signifiers.end());
  std::vector<model::Signifier> twice = {*it, *it};
  try {
    planner::strips_build_domain(twice);
    FAIL("expected a domain error");
  } catch (const planner::DomainError& e) {
    CHECK(e.kind == planner::DomainError::Kind::DuplicateAction);
  }
}

TEST_CASE("objects and state read off the situation") {
  auto p = arm();
  auto objects = planner::objects_from_situation(p.situation);
  CHECK(objects.by_type.at(v::manu_Location) ==
        std::vector<planner::Value>{frag("bench"), frag("tray")});
  CHECK(objects.by_type.at(v::manu_Item) == std::vector<planner::Value>{frag("item1")});
  CHECK(objects.by_type.count(v::manu_OperatorToken) == 0);

  auto state = planner::state_from_situation(p.situation);
  CHECK(oracle_state(state) ==
        std::set<std::string>{"gripperOpen()", "armAt(" + frag("tray") + ")",
                              "itemAt(" + frag("item1") + "," + frag("bench") + ")",
                              "inRange(" + frag("bench") + ")",
                              "inRange(" + frag("tray") + ")"});
}

TEST_CASE("closed gripper and held item read differently") {
  auto situation = testutil::parse_snippet(
      "ex:arm a manu:RoboticArm ; manu:hasGripperValue 0 ;\n"
      "  manu:isAt ex:bench ; manu:holds ex:thing .\n"
      "ex:thing a manu:Item .");
  auto state = planner::state_from_situation(situation);
  auto atoms = oracle_state(state);
  CHECK(atoms.count("gripperOpen()") == 0);
  CHECK(atoms.count("holding(http://test.example/thing)") == 1);
  CHECK(atoms.count("armAt(http://test.example/bench)") == 1);
}

TEST_CASE("grounding enumerates the hand-written table exactly") {
  auto p = arm();
  auto build = planner::strips_build_domain(p.signifiers);
  auto objects = planner::objects_from_situation(p.situation);
  auto actions = planner::ground(build.schemas, objects);

  std::set<std::string> reprs;
  for (const auto& a : actions) reprs.insert(a.repr());
  std::set<std::string> expect;
  for (const auto& a : oracle_domain()) expect.insert(a.name);
  CHECK(reprs == expect);  // six: no tokens, no self-moves, no login
  CHECK(actions.size() == 6);

  // ground preconditions and effects agree with the hand-written domain atom
  // for atom, and request bodies carry exactly the schema-bound parameters
  auto oracle_by_name = [&] {
    std::map<std::string, testutil::OracleAction> m;
    for (const auto& a : oracle_domain()) m[a.name] = a;
    return m;
  }();
  for (const auto& act : actions) {
    INFO(act.repr());
    const auto& o = oracle_by_name.at(act.repr());
    CHECK(oracle_state(act.pre_pos) == o.pre_pos);
    CHECK(act.pre_neg.empty());
    CHECK(oracle_state(act.add) == o.add);
    CHECK(oracle_state(act.del) == o.del);
    if (act.label == "moveTo") {
      REQUIRE(act.input.contains("target"));
      CHECK(act.input["target"] == planner::value_repr(act.args[1]));
    } else {
      REQUIRE(act.input.contains("manu:hasGripperValue"));
      CHECK(act.input["manu:hasGripperValue"] == (act.label == "closeGripper" ? 0 : 500));
    }
  }
}

TEST_CASE("the fixture task plans in four steps, matching the oracle") {
  auto p = arm();
  auto build = planner::strips_build_domain(p.signifiers);
  auto actions = planner::ground(build.schemas, planner::objects_from_situation(p.situation));
  auto initial = planner::state_from_situation(p.situation);
  planner::State goal = {{v::manu_itemAt, {frag("item1"), frag("tray")}}};

  auto steps = planner::plan(actions, initial, goal);
  REQUIRE(steps.size() == 4);
  CHECK(steps[0].repr() == "moveTo(" + frag("tray") + "," + frag("bench") + ")");
  CHECK(steps[1].repr() == "closeGripper(0," + frag("item1") + "," + frag("bench") + ")");
  CHECK(steps[2].repr() == "moveTo(" + frag("bench") + "," + frag("tray") + ")");
  CHECK(steps[3].repr() == "openGripper(500," + frag("item1") + "," + frag("tray") + ")");

  // the independent oracle agrees on the minimal length
  auto oracle = testutil::oracle_plan(oracle_domain(), oracle_state(initial),
                                      {"itemAt(" + frag("item1") + "," + frag("tray") + ")"});
  REQUIRE(oracle.has_value());
  CHECK(oracle->size() == steps.size());

  // plan checker: replay the returned steps and verify every transition
  auto state = oracle_state(initial);
  for (const auto& step : steps) {
    INFO(step.repr());
    for (const auto& atom : oracle_state(step.pre_pos)) REQUIRE(state.count(atom) == 1);
    for (const auto& atom : oracle_state(step.pre_neg)) REQUIRE(state.count(atom) == 0);
    for (const auto& atom : oracle_state(step.del)) state.erase(atom);
    for (const auto& atom : oracle_state(step.add)) state.insert(atom);
  }
  CHECK(state.count("itemAt(" + frag("item1") + "," + frag("tray") + ")") == 1);

  // already-satisfied goals plan to nothing
  CHECK(planner::plan(actions, initial,
                      {{v::manu_itemAt, {frag("item1"), frag("bench")}}})
            .empty());
}

TEST_CASE("unreachable goals fail within the state bound") {
  auto p = arm();
  auto build = planner::strips_build_domain(p.signifiers);
  auto actions = planner::ground(build.schemas, planner::objects_from_situation(p.situation));
  auto initial = planner::state_from_situation(p.situation);
  planner::State impossible = {{v::manu_itemAt, {frag("item1"), frag("nowhere")}}};
  try {
    planner::plan(actions, initial, impossible);
    FAIL("expected planning to fail");
  } catch (const planner::NoPlanError& e) {
    CHECK(e.explored > 0);
    CHECK(e.explored < 1000);  // the reachable space is tiny
  }
  // the oracle agrees that no plan exists
  CHECK_FALSE(testutil::oracle_plan(oracle_domain(), oracle_state(initial),
                                    {"itemAt(" + frag("item1") + "," + frag("nowhere") + ")"})
                  .has_value());

  // a suffocating state bound trips even on solvable tasks
  planner::State goal = {{v::manu_itemAt, {frag("item1"), frag("tray")}}};
  CHECK_THROWS_AS(planner::plan(actions, initial, goal, 2), planner::NoPlanError);
}

TEST_CASE("negative preconditions gate applicability") {
  planner::GroundAction toggle;
  toggle.label = "switchOn";
  toggle.pre_neg = {{"http://test.example/on", {}}};
  toggle.add = {{"http://test.example/on", {}}};
  CHECK(planner::applicable(toggle, {}));
  CHECK_FALSE(planner::applicable(toggle, {{"http://test.example/on", {}}}));

  auto steps = planner::plan({toggle}, {}, {{"http://test.example/on", {}}});
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].label == "switchOn");
}
