#pragma once

// In-memory resource store behind the environment service: workspaces,
// published profiles, per-workspace interaction logs, and the (single)
// simulated arm. One shared mutex guards the whole store; every public
// operation is atomic, so handlers can never deadlock or observe torn state.

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "arm.hpp"
#include "model.hpp"

namespace hypersig::store {

struct StoredArtifact {
  std::string id;
  std::string uri;  // canonical resource URI
  model::ArtifactProfile profile;
};

struct StoredAgent {
  std::string id;
  std::string uri;
  model::AgentProfile profile;
  rdf::Graph source;  // published graph, re-served on GET
};

struct Workspace {
  std::string id;
  std::string uri;
  std::vector<std::string> members;  // contained resource URIs, publication order
  std::vector<model::InteractionRecord> interactions;
};

enum class PutOutcome { Created, Replaced, NoWorkspace };

class ResourceStore {
 public:
  bool create_workspace(const std::string& id, const std::string& uri) {
    std::unique_lock lock(mu_);
    if (workspaces_.count(id)) return false;
    workspaces_[id] = Workspace{id, uri, {}, {}};
    return true;
  }

  std::optional<Workspace> workspace(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = workspaces_.find(id);
    if (it == workspaces_.end()) return std::nullopt;
    return it->second;
  }

  PutOutcome put_artifact(const std::string& w, StoredArtifact art) {
    std::unique_lock lock(mu_);
    auto ws = workspaces_.find(w);
    if (ws == workspaces_.end()) return PutOutcome::NoWorkspace;
    auto& slot = artifacts_[w];
    bool existed = slot.count(art.id) > 0;
    if (!existed) ws->second.members.push_back(art.uri);
    // A published arm resets the simulated device to the described state.
    if (auto arm_iri = arm::find_arm(art.profile.situation)) {
      arm_ref_ = ArmRef{w, art.id};
      arm_state_ = arm::from_situation(art.profile.situation, *arm_iri);
    }
    slot[art.id] = std::move(art);
    return existed ? PutOutcome::Replaced : PutOutcome::Created;
  }

  PutOutcome put_agent(const std::string& w, StoredAgent agent) {
    std::unique_lock lock(mu_);
    auto ws = workspaces_.find(w);
    if (ws == workspaces_.end()) return PutOutcome::NoWorkspace;
    auto& slot = agents_[w];
    bool existed = slot.count(agent.id) > 0;
    if (!existed) ws->second.members.push_back(agent.uri);
    slot[agent.id] = std::move(agent);
    return existed ? PutOutcome::Replaced : PutOutcome::Created;
  }

  std::optional<StoredArtifact> artifact(const std::string& w, const std::string& a) const {
    std::shared_lock lock(mu_);
    auto ws = artifacts_.find(w);
    if (ws == artifacts_.end()) return std::nullopt;
    auto it = ws->second.find(a);
    if (it == ws->second.end()) return std::nullopt;
    return it->second;
  }

  std::optional<StoredAgent> agent(const std::string& w, const std::string& g) const {
    std::shared_lock lock(mu_);
    auto ws = agents_.find(w);
    if (ws == agents_.end()) return std::nullopt;
    auto it = ws->second.find(g);
    if (it == ws->second.end()) return std::nullopt;
    return it->second;
  }

  // Resolves an agent identifier against every stored agent profile: it may
  // name the described agent or the profile document itself.
  std::optional<model::AgentProfile> agent_by_iri(const std::string& iri) const {
    std::shared_lock lock(mu_);
    for (const auto& [w, slot] : agents_)
      for (const auto& [gid, ag] : slot)
        if (ag.profile.agent_iri == iri || ag.uri == iri || ag.profile.id == iri)
          return ag.profile;
    return std::nullopt;
  }

  void log_interaction(const std::string& w, const std::string& agent_iri,
                       const std::string& target, const std::string& outcome) {
    std::unique_lock lock(mu_);
    auto ws = workspaces_.find(w);
    if (ws == workspaces_.end()) return;
    model::InteractionRecord rec;
    rec.agent_iri = agent_iri;
    rec.target = target;
    rec.sequence = static_cast<std::int64_t>(ws->second.interactions.size()) + 1;
    rec.outcome = outcome;
    ws->second.interactions.push_back(std::move(rec));
  }

  std::vector<model::InteractionRecord> interactions(const std::string& w) const {
    std::shared_lock lock(mu_);
    auto ws = workspaces_.find(w);
    if (ws == workspaces_.end()) return {};
    return ws->second.interactions;
  }

  // ----- simulated arm ------------------------------------------------------

  struct ArmRef {
    std::string workspace;
    std::string artifact;
  };

  std::optional<ArmRef> arm_ref() const {
    std::shared_lock lock(mu_);
    return arm_ref_;
  }

  std::optional<arm::ArmState> arm_state() const {
    std::shared_lock lock(mu_);
    return arm_state_;
  }

  // Mints an operator token, remembering which agent (if any) it was issued
  // to so that interactions can be attributed.
  std::optional<std::string> mint_token(const std::string& agent_iri) {
    std::unique_lock lock(mu_);
    if (!arm_state_) return std::nullopt;
    std::uniform_int_distribution<std::uint64_t> dist;
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(dist(rng_)),
                  static_cast<unsigned long long>(dist(rng_)));
    std::string token(buf);
    arm_state_->tokens.insert(token);
    token_agents_[token] = agent_iri.empty() ? "urn:hypersig:anonymous" : agent_iri;
    return token;
  }

  bool token_valid(const std::string& token) const {
    std::shared_lock lock(mu_);
    return arm_state_ && arm_state_->tokens.count(token) > 0;
  }

  std::string token_agent(const std::string& token) const {
    std::shared_lock lock(mu_);
    auto it = token_agents_.find(token);
    return it == token_agents_.end() ? std::string("urn:hypersig:anonymous") : it->second;
  }

  // Runs one arm command atomically; on success the arm artifact's situation
  // graph is regenerated so subsequent profile reads describe the new state.
  template <typename Fn>
  arm::CommandResult command_arm(Fn&& fn) {
    std::unique_lock lock(mu_);
    if (!arm_ref_ || !arm_state_) return {404, "no arm artifact published"};
    arm::CommandResult r = fn(*arm_state_);
    if (r.ok()) {
      auto& art = artifacts_[arm_ref_->workspace][arm_ref_->artifact];
      art.profile.situation = arm::apply_state(art.profile.situation, *arm_state_);
    }
    return r;
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, Workspace> workspaces_;
  std::map<std::string, std::map<std::string, StoredArtifact>> artifacts_;
  std::map<std::string, std::map<std::string, StoredAgent>> agents_;
  std::optional<ArmRef> arm_ref_;
  std::optional<arm::ArmState> arm_state_;
  std::map<std::string, std::string> token_agents_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace hypersig::store
