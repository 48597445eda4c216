#pragma once

// Scenario orchestration: boot an in-process environment, seed the
// manufacturing workspace from fixture files, run the PRS agent and then the
// STRIPS agent against it (re-seeding in between so both face the same
// initial world), and summarize the outcome as a machine-readable report.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "agents.hpp"
#include "service.hpp"

namespace hypersig::scenario {

using nlohmann::json;

constexpr const char* kArmArtifactId = "leubot";
constexpr const char* kPrsAgentId = "prs-agent";
constexpr const char* kStripsAgentId = "strips-agent";

struct SeedPaths {
  std::filesystem::path dir;
  std::filesystem::path workspace() const { return dir / "workspace.ttl"; }
  std::filesystem::path arm_profile() const { return dir / "arm-profile.ttl"; }
  std::filesystem::path prs_agent() const { return dir / "agent-profile-prs.ttl"; }
  std::filesystem::path strips_agent() const { return dir / "agent-profile-strips.ttl"; }
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read fixture " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The workspace id a description names: the final path segment of the node
// typed as a workspace (the same rule the service applies).
inline std::string workspace_id_of(const std::string& ttl, const std::string& parse_base) {
  rdf::Graph g = turtle::parse(ttl, parse_base);
  for (const auto& n : g.subjects_of_type(vocab::hmas_Workspace)) {
    if (!rdf::is_iri(n)) continue;
    const std::string iri = rdf::iri_of(n);
    auto slash = iri.find_last_of('/');
    if (slash != std::string::npos && slash + 1 < iri.size()) return iri.substr(slash + 1);
  }
  throw std::runtime_error("workspace fixture does not describe a workspace");
}

struct SeedResult {
  std::string workspace_id;
  std::string artifact_url;
};

// Creates the workspace (tolerating one that already exists) and publishes
// the arm profile. Safe to repeat: a re-publish resets the arm to the
// fixture-described state while the workspace's interaction log survives.
inline SeedResult seed(const std::string& env_base, const SeedPaths& fx) {
  httplib::Client cli(env_base);
  cli.set_connection_timeout(5, 0);
  cli.set_read_timeout(10, 0);
  const std::string ws_body = slurp(fx.workspace());
  auto r = cli.Post("/workspaces", ws_body, "text/turtle");
  if (!r) throw std::runtime_error("no connection to " + env_base);
  if (r->status != 201 && r->status != 409)
    throw std::runtime_error("workspace creation failed: " + std::to_string(r->status) + " " +
                             r->body);
  SeedResult out;
  out.workspace_id = workspace_id_of(ws_body, env_base + "/workspaces/");
  const std::string artifact_path =
      "/workspaces/" + out.workspace_id + "/artifacts/" + kArmArtifactId;
  auto r2 = cli.Put(artifact_path, slurp(fx.arm_profile()), "text/turtle");
  if (!r2) throw std::runtime_error("no connection to " + env_base);
  if (r2->status != 201 && r2->status != 204)
    throw std::runtime_error("arm publication failed: " + std::to_string(r2->status) + " " +
                             r2->body);
  out.artifact_url = env_base + artifact_path;
  return out;
}

struct AgentSummary {
  bool ran = false;
  bool goal_achieved = false;
  int exposed = 0;
  int plan_length = 0;
  int actions = 0;
  long long wall_ms = 0;
  std::string error;  // empty on success

  json to_json() const {
    return {{"ran", ran},          {"goal_achieved", goal_achieved}, {"exposed", exposed},
            {"plan_length", plan_length}, {"actions", actions},      {"wall_ms", wall_ms},
            {"error", error.empty() ? json(nullptr) : json(error)}};
  }
};

struct ScenarioReport {
  std::string workspace;
  double threshold = sem::kDefaultThreshold;
  AgentSummary prs;
  AgentSummary strips;
  int interactions = 0;
  bool coherence_ok = true;   // served gripper tracked device state on every step
  bool invariants_ok = true;  // an item was only ever held with a closed gripper

  bool success() const {
    bool ok = coherence_ok && invariants_ok;
    if (prs.ran) ok = ok && prs.goal_achieved;
    if (strips.ran) ok = ok && strips.goal_achieved;
    return ok && (prs.ran || strips.ran);
  }

  json to_json() const {
    return {{"workspace", workspace},
            {"threshold", threshold},
            {"prs", prs.to_json()},
            {"strips", strips.to_json()},
            {"interactions", interactions},
            {"coherence_ok", coherence_ok},
            {"invariants_ok", invariants_ok},
            {"success", success()}};
  }
};

struct ScenarioOptions {
  int port = 0;  // 0: ephemeral
  double threshold = sem::kDefaultThreshold;
  std::filesystem::path fixtures = "fixtures";
  std::string only;  // "", "prs" or "strips"
  std::ostream* trace = nullptr;
};

inline ScenarioReport run_scenario(const ScenarioOptions& opts) {
  service::EnvService env({"127.0.0.1", opts.port, opts.threshold});
  if (!env.start()) throw std::runtime_error("could not bind a local port");

  ScenarioReport report;
  report.threshold = opts.threshold;
  SeedPaths fx{opts.fixtures};
  SeedResult seeded = seed(env.base_url(), fx);
  report.workspace = seeded.workspace_id;

  // The scenario goal is whatever the BDI agent desires: both agents pursue
  // the same item/target pair, per the deployment narrative.
  const std::string prs_ttl = slurp(fx.prs_agent());
  const std::string prs_url =
      env.base_url() + "/workspaces/" + seeded.workspace_id + "/agents/" + kPrsAgentId;
  model::AgentProfile prs_profile = model::read_agent_profile(turtle::parse(prs_ttl, prs_url));
  auto desire = agents::read_desire(prs_profile.situation, prs_profile.agent_iri);
  if (!desire || desire->inputs.size() < 2)
    throw std::runtime_error("PRS fixture profile lacks a two-input desire");
  const std::pair<std::string, std::string> goal{desire->inputs[0], desire->inputs[1]};

  // Every observed step is cross-checked against the device itself.
  agents::Observer observer = [&](const agents::StepObservation& obs) {
    auto device = env.arm_state();
    if (!device || device->gripper != obs.gripper) report.coherence_ok = false;
    if (obs.holding && obs.gripper != arm::kGripperClosed) report.invariants_ok = false;
  };

  auto run_one = [&](AgentSummary& out, auto&& fn) {
    out.ran = true;
    auto t0 = std::chrono::steady_clock::now();
    std::exception_ptr failure;
    agents::RunReport rr;
    std::thread th([&] {
      try {
        rr = fn();
      } catch (...) {
        failure = std::current_exception();
      }
    });
    th.join();
    out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (failure) {
      try {
        std::rethrow_exception(failure);
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      return;
    }
    out.goal_achieved = rr.goal_achieved;
    out.exposed = rr.exposed_count;
    out.plan_length = rr.plan_length;
    out.actions = rr.actions_executed;
  };

  const bool run_prs = opts.only.empty() || opts.only == "prs";
  const bool run_strips = opts.only.empty() || opts.only == "strips";

  if (run_prs) {
    agents::RunConfig cfg;
    cfg.env_base = env.base_url();
    cfg.workspace = seeded.workspace_id;
    cfg.agent_id = kPrsAgentId;
    cfg.profile_ttl = prs_ttl;
    cfg.trace = opts.trace;
    cfg.observer = observer;
    run_one(report.prs, [&] { return agents::prs_run(cfg); });
  }

  if (run_strips) {
    if (run_prs) seed(env.base_url(), fx);  // same initial world for both agents
    agents::RunConfig cfg;
    cfg.env_base = env.base_url();
    cfg.workspace = seeded.workspace_id;
    cfg.agent_id = kStripsAgentId;
    cfg.profile_ttl = slurp(fx.strips_agent());
    cfg.goal = goal;
    cfg.trace = opts.trace;
    cfg.observer = observer;
    run_one(report.strips, [&] { return agents::strips_run(cfg); });
  }

  report.interactions =
      static_cast<int>(env.resources().interactions(seeded.workspace_id).size());
  env.stop();
  return report;
}

}  // namespace hypersig::scenario
