// Agent harness coverage: desire reading, salience ordering, both agent
// runs against a live in-process environment (happy paths and failure
// modes), and the orchestrated two-agent scenario with its report.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "hypersig/agents.hpp"
#include "hypersig/scenario.hpp"
#include "hypersig/service.hpp"

using namespace hypersig;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// One live environment seeded from the fixture corpus, plus the pieces a
// client run needs: base URL, workspace id, artifact URL, agent profiles.
struct LiveEnv {
  service::EnvService svc;
  std::string base;
  scenario::SeedResult seeded;

  LiveEnv() : svc({"127.0.0.1", 0, sem::kDefaultThreshold}) {
    REQUIRE(svc.start());
    base = svc.base_url();
    seeded = scenario::seed(base, scenario::SeedPaths{testutil::fixtures_dir()});
    REQUIRE(seeded.workspace_id == "wksp1");
  }
  ~LiveEnv() { svc.stop(); }

  std::string frag(const std::string& name) const { return seeded.artifact_url + "#" + name; }

  agents::RunConfig config(const std::string& agent_id, const std::string& fixture) const {
    agents::RunConfig cfg;
    cfg.env_base = base;
    cfg.workspace = seeded.workspace_id;
    cfg.agent_id = agent_id;
    cfg.profile_ttl = testutil::fixture_text(fixture);
    return cfg;
  }

  // Replaces the published arm description with an edited variant.
  void republish_arm(const std::string& ttl) {
    httplib::Client cli(base);
    auto r = cli.Put("/workspaces/wksp1/artifacts/leubot", ttl, "text/turtle");
    REQUIRE(r);
    REQUIRE(r->status == 204);
  }
};

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

}  // namespace

TEST_CASE("desire reading recovers the pick-and-place goal") {
  const std::string url = "http://t.example/workspaces/wksp1/agents/prs-agent";
  model::AgentProfile profile =
      model::read_agent_profile(testutil::parse_fixture("agent-profile-prs.ttl", url));

  auto desire = agents::read_desire(profile.situation, profile.agent_iri);
  REQUIRE(desire.has_value());
  CHECK(ends_with(desire->goal_type, "#PickAndPlace"));
  REQUIRE(desire->inputs.size() == 2);
  CHECK(ends_with(desire->inputs[0], "/artifacts/leubot#item1"));
  CHECK(ends_with(desire->inputs[1], "/artifacts/leubot#tray"));

  SECTION("a profile without a desire yields nothing") {
    model::AgentProfile strips = model::read_agent_profile(testutil::parse_fixture(
        "agent-profile-strips.ttl", "http://t.example/workspaces/wksp1/agents/strips-agent"));
    CHECK_FALSE(agents::read_desire(strips.situation, strips.agent_iri).has_value());
  }
}

TEST_CASE("salience ordering is descending with unranked entries last") {
  auto sig = [](const std::string& id, std::optional<double> salience) {
    model::Signifier s;
    s.id = id;
    s.salience = salience;
    return s;
  };
  std::vector<model::Signifier> sigs{sig("plain-a", std::nullopt), sig("low", 1),
                                     sig("high", 5),  sig("plain-b", std::nullopt),
                                     sig("mid-a", 3), sig("mid-b", 3)};
  agents::detail::sort_by_salience(sigs);

  std::vector<std::string> order;
  for (const auto& s : sigs) order.push_back(s.id);
  // Ties and unranked entries keep their relative input order (stable sort).
  CHECK(order == std::vector<std::string>{"high", "mid-a", "mid-b", "low", "plain-a", "plain-b"});
}

TEST_CASE("BDI run discovers, binds and achieves its desire") {
  LiveEnv env;
  std::vector<agents::StepObservation> seen;
  agents::RunConfig cfg = env.config(scenario::kPrsAgentId, "agent-profile-prs.ttl");
  cfg.observer = [&](const agents::StepObservation& o) { seen.push_back(o); };

  agents::RunReport report = agents::prs_run(cfg);

  CHECK(report.goal_achieved);
  CHECK(report.exposed_count == 6);
  CHECK(report.plan_length == 4);
  CHECK(report.actions_executed == 4);
  CHECK(report.agent_iri.find("prs-agent") != std::string::npos);

  REQUIRE(report.steps.size() == 4);
  CHECK(seen.size() == 4);  // observer saw every step
  for (const auto& obs : report.steps) {
    CHECK(obs.status / 100 == 2);
    // Safety invariant: an item may only be held with the gripper closed.
    if (obs.holding) CHECK(obs.gripper == arm::kGripperClosed);
  }
  // Move to the item, grasp, carry to the target, release.
  CHECK(ends_with(report.steps[0].at, "#bench"));
  CHECK_FALSE(report.steps[0].holding.has_value());
  CHECK(report.steps[1].gripper == arm::kGripperClosed);
  REQUIRE(report.steps[1].holding.has_value());
  CHECK(*report.steps[1].holding == env.frag("item1"));
  CHECK(ends_with(report.steps[2].at, "#tray"));
  CHECK(report.steps[3].gripper == arm::kGripperOpen);
  CHECK_FALSE(report.steps[3].holding.has_value());

  SECTION("the served world records the item at its target") {
    httplib::Client cli(env.base);
    auto r = cli.Get("/workspaces/wksp1/artifacts/leubot");
    REQUIRE(r);
    rdf::Graph g = turtle::parse(r->body, env.seeded.artifact_url);
    CHECK(g.contains(rdf::iri(env.frag("item1")), rdf::iri(vocab::manu_hasLocation),
                     rdf::iri(env.frag("tray"))));
  }
}

TEST_CASE("planning run synthesizes and executes a four-step plan") {
  LiveEnv env;
  agents::RunConfig cfg = env.config(scenario::kStripsAgentId, "agent-profile-strips.ttl");
  cfg.goal = {{env.frag("item1"), env.frag("tray")}};

  agents::RunReport report = agents::strips_run(cfg);

  CHECK(report.goal_achieved);
  CHECK(report.exposed_count == 4);
  CHECK(report.plan_length == 4);
  CHECK(report.actions_executed == 4);
  REQUIRE(report.steps.size() == 4);
  CHECK(report.steps[1].holding.has_value());
  CHECK(ends_with(report.steps[2].at, "#tray"));
  CHECK_FALSE(report.steps[3].holding.has_value());
}

TEST_CASE("planning run demands an explicit goal") {
  LiveEnv env;
  agents::RunConfig cfg = env.config(scenario::kStripsAgentId, "agent-profile-strips.ttl");
  try {
    agents::strips_run(cfg);
    FAIL("expected a protocol error");
  } catch (const agents::AgentError& e) {
    CHECK(e.kind == agents::AgentError::Kind::Protocol);
  }
}

TEST_CASE("a description without machine-readable behavior yields an empty domain") {
  LiveEnv env;
  env.republish_arm(testutil::fixture_text("arm-profile-generic.ttl"));
  agents::RunConfig cfg = env.config(scenario::kStripsAgentId, "agent-profile-strips.ttl");
  cfg.goal = {{env.frag("item1"), env.frag("tray")}};

  SECTION("with agent identification nothing matches the planner's abilities") {
    try {
      agents::strips_run(cfg);
      FAIL("expected an empty-domain error");
    } catch (const planner::DomainError& e) {
      CHECK(e.kind == planner::DomainError::Kind::EmptyDomain);
    }
  }
  SECTION("even the unfiltered description carries no operator semantics") {
    cfg.send_agent_header = false;
    try {
      agents::strips_run(cfg);
      FAIL("expected an empty-domain error");
    } catch (const planner::DomainError& e) {
      CHECK(e.kind == planner::DomainError::Kind::EmptyDomain);
    }
  }
}

TEST_CASE("a desire out of the arm's reach finds no applicable signifier") {
  LiveEnv env;
  // Extend the world with an item on a shelf the arm cannot reach, and point
  // the agent's desire at that item instead.
  std::string arm = testutil::fixture_text("arm-profile.ttl");
  arm +=
      "\n<#shelf> a manu:Location .\n"
      "<#item2> a manu:Item ;\n"
      "  manu:hasLocation <#shelf> .\n";
  env.republish_arm(arm);

  agents::RunConfig cfg = env.config(scenario::kPrsAgentId, "agent-profile-prs.ttl");
  cfg.profile_ttl = replace_all(cfg.profile_ttl, "item1", "item2");
  try {
    agents::prs_run(cfg);
    FAIL("expected no applicable signifier");
  } catch (const agents::AgentError& e) {
    CHECK(e.kind == agents::AgentError::Kind::NoApplicableSignifier);
  }
}

TEST_CASE("an exposure with no login path cannot start a session") {
  LiveEnv env;
  // Raising the threshold above every signifier's score hides all of them,
  // including the login entry point.
  agents::RunConfig cfg = env.config(scenario::kPrsAgentId, "agent-profile-prs.ttl");
  cfg.threshold = 1.0;
  try {
    agents::prs_run(cfg);
    FAIL("expected no applicable signifier");
  } catch (const agents::AgentError& e) {
    CHECK(e.kind == agents::AgentError::Kind::NoApplicableSignifier);
  }
}

TEST_CASE("scenario run drives both agents to the goal over one environment") {
  scenario::ScenarioOptions opts;
  opts.fixtures = testutil::fixtures_dir();
  scenario::ScenarioReport report = scenario::run_scenario(opts);

  CHECK(report.success());
  CHECK(report.workspace == "wksp1");
  CHECK(report.coherence_ok);
  CHECK(report.invariants_ok);
  CHECK(report.interactions == 8);  // login + three arm actions, per agent

  for (const scenario::AgentSummary* a : {&report.prs, &report.strips}) {
    CHECK(a->ran);
    CHECK(a->goal_achieved);
    CHECK(a->plan_length == 4);
    CHECK(a->actions == 4);
    CHECK(a->error.empty());
  }
  CHECK(report.prs.exposed == 6);
  CHECK(report.strips.exposed == 4);

  SECTION("the JSON report mirrors the summary") {
    nlohmann::json j = report.to_json();
    CHECK(j.at("success").get<bool>());
    CHECK(j.at("interactions").get<int>() == 8);
    CHECK(j.at("prs").at("exposed").get<int>() == 6);
    CHECK(j.at("strips").at("exposed").get<int>() == 4);
  }
}

TEST_CASE("scenario honors the single-agent filter") {
  scenario::ScenarioOptions opts;
  opts.fixtures = testutil::fixtures_dir();
  opts.only = "strips";
  scenario::ScenarioReport report = scenario::run_scenario(opts);

  CHECK(report.success());
  CHECK_FALSE(report.prs.ran);
  CHECK(report.strips.ran);
  CHECK(report.strips.goal_achieved);
  CHECK(report.interactions == 4);
}

TEST_CASE("scenario outcomes are reproducible") {
  scenario::ScenarioOptions opts;
  opts.fixtures = testutil::fixtures_dir();
  nlohmann::json a = scenario::run_scenario(opts).to_json();
  nlohmann::json b = scenario::run_scenario(opts).to_json();
  for (nlohmann::json* j : {&a, &b}) {
    (*j)["prs"].erase("wall_ms");
    (*j)["strips"].erase("wall_ms");
  }
  CHECK(a == b);
}
