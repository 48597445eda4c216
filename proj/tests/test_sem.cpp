// Exposure mechanism: fixture-level decisions for both agent kinds, the
// pass-through without an agent profile, strict threshold comparison, and
// randomized algebraic properties of the filter.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <hypersig/model.hpp>
#include <hypersig/sem.hpp>
#include <hypersig/vocab.hpp>

#include "helpers.hpp"
#include "property_world.hpp"

using namespace hypersig;
namespace v = hypersig::vocab;

namespace {

constexpr const char* kArmBase = "http://t.example/workspaces/wksp1/artifacts/leubot";

model::ArtifactProfile arm() {
  return model::read_artifact_profile(testutil::parse_fixture("arm-profile.ttl", kArmBase));
}

model::AgentProfile agent(const std::string& fixture, const std::string& name) {
  return model::read_agent_profile(
      testutil::parse_fixture(fixture, "http://t.example/workspaces/wksp1/agents/" + name));
}

std::string frag(const std::string& name) { return std::string(kArmBase) + "#" + name; }

std::vector<std::string> ids_of(const model::ArtifactProfile& p) {
  std::vector<std::string> out;
  for (const auto& s : p.signifiers) out.push_back(s.id);
  return out;
}

std::set<std::string> id_set(const model::ArtifactProfile& p) {
  auto v = ids_of(p);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("default threshold is fixed") { CHECK(sem::kDefaultThreshold == 0.99); }

TEST_CASE("exposure for the deliberating agent") {
  auto result = sem::expose(arm(), agent("agent-profile-prs.ttl", "prs-agent"));
  std::set<std::string> expect = {frag("g-login"), frag("g-move"),   frag("g-close"),
                                  frag("prs-move"), frag("prs-close"), frag("prs-open")};
  CHECK(id_set(result.profile) == expect);

  // most salient first: the tailored family, then the generic movable pair,
  // then the salience-less login at the very end
  auto order = ids_of(result.profile);
  REQUIRE(order.size() == 6);
  std::set<std::string> first3(order.begin(), order.begin() + 3);
  CHECK(first3 == std::set<std::string>{frag("prs-move"), frag("prs-close"), frag("prs-open")});
  std::set<std::string> mid2(order.begin() + 3, order.begin() + 5);
  CHECK(mid2 == std::set<std::string>{frag("g-move"), frag("g-close")});
  CHECK(order.back() == frag("g-login"));

  // the trace covers every signifier and explains each decision
  CHECK(result.trace.size() == 11);
  for (const auto& d : result.trace) {
    INFO(d.signifier);
    CHECK(d.exposed == (d.ability_ok && d.context_score > sem::kDefaultThreshold));
    if (d.signifier == frag("g-open")) {
      CHECK(d.ability_ok);
      CHECK(d.context_score == 0.0);  // the gripper is open, not closed
      CHECK_FALSE(d.exposed);
    }
    if (d.signifier == frag("s-move")) CHECK_FALSE(d.ability_ok);
  }

  // exposed signifiers keep their context definitions, unexposed ones vanish
  CHECK(result.profile.context_defs.count(frag("env-context")) == 1);
  CHECK(result.profile.context_defs.count(frag("prs-context")) == 1);
  CHECK(result.profile.context_defs.count(frag("closed-context")) == 0);
}

TEST_CASE("exposure for the planning agent") {
  auto result = sem::expose(arm(), agent("agent-profile-strips.ttl", "strips-agent"));
  std::set<std::string> expect = {frag("s-login"), frag("s-move"), frag("s-close"),
                                  frag("s-open")};
  CHECK(id_set(result.profile) == expect);
  for (const auto& s : result.profile.signifiers) CHECK(s.spec.pddl.has_value());
}

TEST_CASE("no agent profile passes the artifact profile through") {
  auto p = arm();
  auto result = sem::expose(p, std::nullopt);
  CHECK(result.trace.empty());
  CHECK(ids_of(result.profile) == ids_of(p));  // same signifiers, same order
  CHECK(result.profile.signifiers == p.signifiers);
  CHECK(rdf::isomorphic(result.profile.situation, p.situation));
  CHECK(result.profile.context_defs.size() == p.context_defs.size());
}

TEST_CASE("threshold comparison is strict") {
  // one of two contexts passes: the score is exactly one half
  auto artifact = model::read_artifact_profile(testutil::parse_snippet(
      "ex:p a hmas:ArtifactProfile ; hmas:isProfileOf ex:art .\n"
      "ex:art ex:state ex:good .\n"
      "ex:pass a sh:NodeShape ; sh:targetNode ex:art ;\n"
      "  sh:property [ sh:path ex:state ; sh:minCount 1 ] .\n"
      "ex:fail a sh:NodeShape ; sh:targetNode ex:art ;\n"
      "  sh:property [ sh:path ex:state ; sh:minCount 5 ] .\n"
      "ex:sig a hmas:Signifier ;\n"
      "  hint:recommendsContext ex:pass ; hint:recommendsContext ex:fail ;\n"
      "  hint:signifies ex:spec .\n"
      "ex:spec a hint:ActionSpecification ; hint:hasForm [ hctl:hasTarget <http://t/x> ] ."));
  model::AgentProfile nobody;  // no abilities, empty situation: vacuous ability match
  auto at = [&](double t) { return sem::expose(artifact, nobody, t); };
  CHECK(at(0.5).trace[0].context_score == 0.5);
  CHECK_FALSE(at(0.5).trace[0].exposed);  // equal to the threshold: kept out
  CHECK(at(0.49).trace[0].exposed);
  CHECK(at(0.0).trace[0].exposed);
  CHECK_FALSE(at(1.0).trace[0].exposed);  // nothing beats a threshold of one
}

// ---------------------------------------------------------------------------
// Randomized algebraic properties
// ---------------------------------------------------------------------------

namespace {

using testutil::make_world;
using testutil::random_agent;
using testutil::random_artifact;

}  // namespace

TEST_CASE("exposure only ever selects from the original signifiers") {
  auto w = make_world();
  std::mt19937 rng(20260816);
  std::uniform_real_distribution<double> thr(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_artifact(w, rng);
    auto result = sem::expose(p, random_agent(w, rng), thr(rng));
    std::set<std::string> original = id_set(p);
    if (result.profile.signifiers.size() > p.signifiers.size()) ++violations;
    for (const auto& s : result.profile.signifiers)
      if (!original.count(s.id)) ++violations;
    if (result.trace.size() != p.signifiers.size()) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("exposing an exposed profile changes nothing") {
  auto w = make_world();
  std::mt19937 rng(907);
  std::uniform_real_distribution<double> thr(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_artifact(w, rng);
    auto ag = random_agent(w, rng);
    double t = thr(rng);
    auto once = sem::expose(p, ag, t);
    auto twice = sem::expose(once.profile, ag, t);
    if (!(twice.profile.signifiers == once.profile.signifiers)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("more abilities never hide a signifier") {
  auto w = make_world();
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> thr(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_artifact(w, rng);
    auto weaker = random_agent(w, rng);
    auto stronger = weaker;
    for (const auto& ab : w.abilities)
      if (coin(rng)) stronger.abilities.insert(ab);
    double t = thr(rng);
    auto few = id_set(sem::expose(p, weaker, t).profile);
    auto many = id_set(sem::expose(p, stronger, t).profile);
    if (!std::includes(many.begin(), many.end(), few.begin(), few.end())) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("raising the threshold never adds a signifier") {
  auto w = make_world();
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> thr(0.0, 1.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_artifact(w, rng);
    auto ag = random_agent(w, rng);
    double t1 = thr(rng), t2 = thr(rng);
    if (t2 < t1) std::swap(t1, t2);
    auto low = id_set(sem::expose(p, ag, t1).profile);
    auto high = id_set(sem::expose(p, ag, t2).profile);
    if (!std::includes(low.begin(), low.end(), high.begin(), high.end())) ++violations;
  }
  CHECK(violations == 0);
}
