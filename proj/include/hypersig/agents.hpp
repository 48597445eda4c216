#pragma once

// Two autonomous HTTP clients that drive the pick-and-place scenario:
// a PRS-style BDI agent that binds the steps of a pre-authored abstract plan
// to discovered hypermedia controls, and a STRIPS agent that synthesizes a
// plan from signified action specifications. Both publish their profiles,
// navigate workspace containment, and execute entirely through served forms.

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "arm.hpp"
#include "httplib.h"
#include "json.hpp"
#include "model.hpp"
#include "planner.hpp"
#include "turtle.hpp"

namespace hypersig::agents {

namespace v = hypersig::vocab;
using nlohmann::json;

class AgentError : public std::runtime_error {
 public:
  enum class Kind { NoApplicableSignifier, ExecutionFailed, Protocol };
  AgentError(Kind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind(kind), status(status) {}
  Kind kind;
  int status;  // HTTP status for ExecutionFailed, 0 otherwise
};

// A goal-achievement desire read from an agent's own profile.
struct Desire {
  std::string goal_type;
  std::vector<std::string> inputs;  // for pick-and-place: item, target location
};

inline std::optional<Desire> read_desire(const rdf::Graph& g, const std::string& agent_iri) {
  for (const auto& d : g.objects_of(rdf::iri(agent_iri), v::prs_hasDesire)) {
    if (!g.has_type(d, v::prs_GoalAchievement)) continue;
    Desire out;
    for (const auto& ty : g.objects_of(d, rdf::rdf_type))
      if (rdf::is_iri(ty) && rdf::iri_of(ty) != v::prs_GoalAchievement)
        out.goal_type = rdf::iri_of(ty);
    if (auto list = g.object_of(d, v::prs_hasInputList))
      for (const auto& item : g.read_list(*list))
        if (rdf::is_iri(item)) out.inputs.push_back(rdf::iri_of(item));
    return out;
  }
  return std::nullopt;
}

// Snapshot taken after every executed action from a fresh profile read; the
// harness uses these to check that served state tracks the device.
struct StepObservation {
  std::string action;
  int status = 0;                      // status of the action call itself
  std::int64_t gripper = 0;            // as served in the situation graph
  std::string at;
  std::optional<std::string> holding;
};
using Observer = std::function<void(const StepObservation&)>;

struct RunConfig {
  std::string env_base;    // e.g. http://127.0.0.1:8080
  std::string workspace;   // workspace id
  std::string agent_id;    // path segment the profile is published under
  std::string profile_ttl; // profile document to publish
  std::optional<std::string> agent_iri;  // else taken from the profile
  std::optional<double> threshold;       // forwarded as ?t=
  // Goal as (item, target location); PRS derives it from its desire when
  // absent, the STRIPS agent requires it.
  std::optional<std::pair<std::string, std::string>> goal;
  bool send_agent_header = true;
  std::ostream* trace = nullptr;  // JSON-lines sink
  Observer observer;
};

struct RunReport {
  bool goal_achieved = false;
  int exposed_count = 0;      // signifiers in the first profile read
  int plan_length = 0;        // bound steps (PRS) / synthesized plan (STRIPS)
  int actions_executed = 0;
  std::string agent_iri;
  std::vector<StepObservation> steps;
};

namespace detail {

// Strips scheme://authority and any fragment off an absolute URL, yielding
// the request path for a same-origin client.
inline std::string path_of(std::string url) {
  if (auto hash = url.find('#'); hash != std::string::npos) url.resize(hash);
  auto scheme = url.find("://");
  if (scheme == std::string::npos) return url;
  auto slash = url.find('/', scheme + 3);
  return slash == std::string::npos ? "/" : url.substr(slash);
}

struct Ctx {
  const RunConfig& cfg;
  httplib::Client client;
  std::string agent_iri;
  std::string token;

  explicit Ctx(const RunConfig& c) : cfg(c), client(c.env_base) {
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
  }

  void trace(json event) const {
    if (cfg.trace) *cfg.trace << event.dump() << "\n";
  }

  std::string profile_url() const {
    return cfg.env_base + "/workspaces/" + cfg.workspace + "/agents/" + cfg.agent_id;
  }
};

inline void require(const httplib::Result& r, const std::string& what, int expected = 0) {
  if (!r)
    throw AgentError(AgentError::Kind::ExecutionFailed, what + ": no connection to server");
  if (expected != 0 && r->status != expected)
    throw AgentError(AgentError::Kind::ExecutionFailed,
                     what + ": unexpected status " + std::to_string(r->status), r->status);
}

inline void publish_profile(Ctx& c) {
  auto r = c.client.Put(path_of(c.profile_url()), c.cfg.profile_ttl, "text/turtle");
  require(r, "publish profile");
  if (r->status != 201 && r->status != 204)
    throw AgentError(AgentError::Kind::ExecutionFailed,
                     "publish profile: status " + std::to_string(r->status), r->status);
  c.trace({{"event", "publish_profile"}, {"url", c.profile_url()}, {"status", r->status}});
}

// Workspace navigation: follow containment edges to artifact resources.
inline std::vector<std::string> workspace_artifacts(Ctx& c) {
  std::string url = c.cfg.env_base + "/workspaces/" + c.cfg.workspace;
  auto r = c.client.Get(path_of(url));
  require(r, "fetch workspace", 200);
  rdf::Graph g = turtle::parse(r->body, url);
  std::vector<std::string> out;
  for (const auto& t : g.match(std::nullopt, rdf::iri(v::hmas_contains), std::nullopt))
    if (rdf::is_iri(t.o) && rdf::iri_of(t.o).find("/artifacts/") != std::string::npos)
      out.push_back(rdf::iri_of(t.o));
  c.trace({{"event", "fetch_workspace"}, {"artifacts", out}});
  return out;
}

inline model::ArtifactProfile fetch_profile(Ctx& c, const std::string& artifact_url) {
  httplib::Headers headers;
  if (c.cfg.send_agent_header) headers.emplace("X-Agent-IRI", c.agent_iri);
  std::string path = path_of(artifact_url);
  if (c.cfg.threshold) path += "?t=" + std::to_string(*c.cfg.threshold);
  auto r = c.client.Get(path, headers);
  require(r, "fetch artifact profile", 200);
  return model::read_artifact_profile(turtle::parse(r->body, artifact_url));
}

// Served profiles are plain graphs, so the exposure ordering is recovered
// client-side from the salience values: higher first, unranked last.
inline void sort_by_salience(std::vector<model::Signifier>& sigs) {
  std::stable_sort(sigs.begin(), sigs.end(),
                   [](const model::Signifier& a, const model::Signifier& b) {
                     if (a.salience && b.salience) return *a.salience > *b.salience;
                     return a.salience.has_value() && !b.salience.has_value();
                   });
}

inline bool has_action_type(const model::Signifier& sig, const std::string& type) {
  const auto& tys = sig.spec.action_types;
  return std::find(tys.begin(), tys.end(), type) != tys.end();
}

// Mints an operator token by driving a signified login action.
inline void login(Ctx& c, const model::ArtifactProfile& profile) {
  for (const auto& sig : profile.signifiers) {
    if (!has_action_type(sig, v::manu_OperatorLogin)) continue;
    const model::Form& form = sig.spec.forms.front();
    httplib::Headers headers{{"X-Agent-IRI", c.agent_iri}};
    auto r = c.client.Post(path_of(form.target), headers, "{}", form.content_type);
    require(r, "login", 201);
    c.token = json::parse(r->body).at("token").get<std::string>();
    c.trace({{"event", "login"}, {"via", sig.id}, {"status", r->status}});
    return;
  }
  throw AgentError(AgentError::Kind::NoApplicableSignifier, "no login signifier exposed");
}

struct BoundAction {
  std::string label;
  model::Form form;
  json input;
  std::string signifier;  // which cue supplied the binding
};

inline int execute(Ctx& c, const BoundAction& action) {
  httplib::Headers headers{{"X-Operator-Token", c.token}, {"X-Agent-IRI", c.agent_iri}};
  const std::string method = action.form.method.value_or("POST");
  const std::string path = path_of(action.form.target);
  const std::string body = action.input.dump();
  httplib::Result r = method == "PUT"    ? c.client.Put(path, headers, body, action.form.content_type)
                      : method == "POST" ? c.client.Post(path, headers, body, action.form.content_type)
                                         : httplib::Result{};
  require(r, action.label);
  if (r->status / 100 != 2)
    throw AgentError(AgentError::Kind::ExecutionFailed,
                     action.label + ": status " + std::to_string(r->status) + " " + r->body,
                     r->status);
  return r->status;
}

inline StepObservation observe(Ctx& c, const std::string& artifact_url,
                               const std::string& action, int status) {
  model::ArtifactProfile p = fetch_profile(c, artifact_url);
  StepObservation obs;
  obs.action = action;
  obs.status = status;
  if (auto arm_iri = arm::find_arm(p.situation)) {
    arm::ArmState st = arm::from_situation(p.situation, *arm_iri);
    obs.gripper = st.gripper;
    obs.at = st.at;
    obs.holding = st.holding;
  }
  c.trace({{"event", "observe"},
           {"action", action},
           {"status", status},
           {"gripper", obs.gripper},
           {"at", obs.at},
           {"holding", obs.holding ? json(*obs.holding) : json(nullptr)}});
  if (c.cfg.observer) c.cfg.observer(obs);
  return obs;
}

inline bool verify_goal(Ctx& c, const std::string& artifact_url,
                        const std::pair<std::string, std::string>& goal) {
  model::ArtifactProfile p = fetch_profile(c, artifact_url);
  bool ok = p.situation.contains(rdf::iri(goal.first), rdf::iri(v::manu_hasLocation),
                                 rdf::iri(goal.second));
  c.trace({{"event", "verify"}, {"item", goal.first}, {"target", goal.second}, {"achieved", ok}});
  return ok;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PRS agent
// ---------------------------------------------------------------------------

namespace detail {

struct AbstractStep {
  std::string action_type;  // domain action class the step needs
  json provided;            // inputs the plan itself supplies
  std::string label;
};

// Binds one abstract step to the best exposed signifier: signifiers are
// tried in salience order; the step's own inputs are completed from the
// signified schema (single-valued enums), then validated before acceptance.
inline std::optional<BoundAction> bind_step(const std::vector<model::Signifier>& sigs,
                                            const AbstractStep& step) {
  for (const auto& sig : sigs) {
    if (!has_action_type(sig, step.action_type)) continue;
    json input = step.provided;
    if (sig.spec.input) {
      const model::InputSchema& schema = *sig.spec.input;
      bool completable = true;
      if (schema.kind == model::InputSchema::Kind::Object) {
        for (const auto& name : schema.required) {
          if (input.contains(name)) continue;
          const model::InputSchema* prop = nullptr;
          for (const auto& p : schema.properties)
            if (p.property_name == name) prop = &p;
          if (prop && prop->enum_values.size() == 1) {
            if (auto n = model::detail::integer_of(prop->enum_values.front()))
              input[name] = *n;
            else
              input[name] = model::detail::lexical_of(prop->enum_values.front());
          } else {
            completable = false;
            break;
          }
        }
      }
      if (!completable) continue;
      if (!model::validate_input(schema, input).empty()) continue;
    }
    return BoundAction{step.label, sig.spec.forms.front(), input, sig.id};
  }
  return std::nullopt;
}

}  // namespace detail

// Runs the BDI agent: publish profile, discover the arm through workspace
// containment, bind the pick-and-place plan's steps to exposed signifiers,
// execute, and verify the desire is satisfied.
inline RunReport prs_run(const RunConfig& cfg) {
  detail::Ctx c(cfg);
  RunReport report;
  rdf::Graph own = turtle::parse(cfg.profile_ttl, c.profile_url());
  model::AgentProfile self = model::read_agent_profile(own);
  c.agent_iri = cfg.agent_iri.value_or(self.agent_iri);
  report.agent_iri = c.agent_iri;

  auto goal = cfg.goal;
  if (!goal) {
    auto desire = read_desire(self.situation, self.agent_iri);
    if (desire && desire->inputs.size() >= 2)
      goal = std::make_pair(desire->inputs[0], desire->inputs[1]);
  }
  if (!goal)
    throw AgentError(AgentError::Kind::Protocol, "agent has no pick-and-place desire");

  detail::publish_profile(c);
  auto artifacts = detail::workspace_artifacts(c);
  if (artifacts.empty())
    throw AgentError(AgentError::Kind::NoApplicableSignifier, "workspace holds no artifacts");

  std::string failing_step;
  for (const auto& artifact_url : artifacts) {
    model::ArtifactProfile profile = detail::fetch_profile(c, artifact_url);
    detail::sort_by_salience(profile.signifiers);
    report.exposed_count = static_cast<int>(profile.signifiers.size());
    {
      json ids = json::array();
      for (const auto& s : profile.signifiers) ids.push_back(s.id);
      c.trace({{"event", "exposure"}, {"artifact", artifact_url}, {"signifiers", ids}});
    }

    auto item_loc = profile.situation.object_of(rdf::iri(goal->first), v::manu_hasLocation);
    if (!item_loc || !rdf::is_iri(*item_loc)) continue;  // item not here

    std::vector<detail::AbstractStep> steps = {
        {v::manu_MoveTo, {{"target", rdf::iri_of(*item_loc)}}, "moveTo"},
        {v::manu_CloseGripper, json::object(), "closeGripper"},
        {v::manu_MoveTo, {{"target", goal->second}}, "moveTo"},
        {v::manu_OpenGripper, json::object(), "openGripper"},
    };

    std::vector<detail::BoundAction> bound;
    bool complete = true;
    for (const auto& step : steps) {
      auto b = detail::bind_step(profile.signifiers, step);
      if (!b) {
        failing_step = step.label;
        complete = false;
        break;
      }
      c.trace({{"event", "bind"}, {"step", step.label}, {"signifier", b->signifier}});
      bound.push_back(std::move(*b));
    }
    if (!complete) continue;

    report.plan_length = static_cast<int>(bound.size());
    detail::login(c, profile);
    for (const auto& action : bound) {
      int status = detail::execute(c, action);
      ++report.actions_executed;
      report.steps.push_back(detail::observe(c, artifact_url, action.label, status));
    }
    report.goal_achieved = detail::verify_goal(c, artifact_url, *goal);
    return report;
  }
  throw AgentError(AgentError::Kind::NoApplicableSignifier,
                   failing_step.empty() ? "no artifact offers the needed actions"
                                        : "no exposed signifier binds step " + failing_step);
}

// ---------------------------------------------------------------------------
// STRIPS agent
// ---------------------------------------------------------------------------

// Runs the planning agent: publish profile, fetch the arm profile, lift the
// signified action specifications into a domain, plan breadth-first from the
// situation-derived state, then execute the synthesized plan.
inline RunReport strips_run(const RunConfig& cfg) {
  detail::Ctx c(cfg);
  RunReport report;
  rdf::Graph own = turtle::parse(cfg.profile_ttl, c.profile_url());
  model::AgentProfile self = model::read_agent_profile(own);
  c.agent_iri = cfg.agent_iri.value_or(self.agent_iri);
  report.agent_iri = c.agent_iri;

  if (!cfg.goal)
    throw AgentError(AgentError::Kind::Protocol, "planning agent needs a goal");
  planner::State goal_state{{v::manu_itemAt, {cfg.goal->first, cfg.goal->second}}};

  detail::publish_profile(c);
  auto artifacts = detail::workspace_artifacts(c);
  if (artifacts.empty())
    throw AgentError(AgentError::Kind::NoApplicableSignifier, "workspace holds no artifacts");

  const std::string artifact_url = artifacts.front();
  model::ArtifactProfile profile = detail::fetch_profile(c, artifact_url);
  detail::sort_by_salience(profile.signifiers);
  report.exposed_count = static_cast<int>(profile.signifiers.size());

  planner::DomainBuild domain = planner::strips_build_domain(profile.signifiers);
  for (const auto& warning : domain.warnings)
    c.trace({{"event", "warning"}, {"message", warning}});
  if (domain.schemas.empty())
    throw planner::DomainError(planner::DomainError::Kind::EmptyDomain,
                               "no signified action specifications carry planning annotations");

  planner::Objects objects = planner::objects_from_situation(profile.situation);
  planner::State initial = planner::state_from_situation(profile.situation);
  std::vector<planner::GroundAction> actions = planner::ground(domain.schemas, objects);
  std::vector<planner::GroundAction> steps = planner::plan(actions, initial, goal_state);
  report.plan_length = static_cast<int>(steps.size());
  {
    json plan = json::array();
    for (const auto& s : steps) plan.push_back(s.repr());
    c.trace({{"event", "plan"},
             {"schemas", domain.schemas.size()},
             {"ground_actions", actions.size()},
             {"plan", plan}});
  }

  if (!steps.empty()) {
    detail::login(c, profile);
    for (const auto& step : steps) {
      detail::BoundAction action{step.repr(), step.form, step.input, ""};
      int status = detail::execute(c, action);
      ++report.actions_executed;
      report.steps.push_back(detail::observe(c, artifact_url, step.repr(), status));
    }
  }
  report.goal_achieved = detail::verify_goal(c, artifact_url, *cfg.goal);
  return report;
}

}  // namespace hypersig::agents
