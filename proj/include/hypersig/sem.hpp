#pragma once

// Signifier exposure: given an artifact profile and the requesting agent's
// profile, keep the signifiers whose recommended abilities the agent has and
// whose recommended contexts score above the exposure threshold, sorted most
// salient first. Without an agent profile the artifact profile passes
// through unchanged.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"
#include "shapes.hpp"

namespace hypersig::sem {

inline constexpr double kDefaultThreshold = 0.99;

struct ExposureDecision {
  std::string signifier;
  bool ability_ok = false;
  double context_score = 0.0;
  bool exposed = false;
};

struct ExposureResult {
  model::ArtifactProfile profile;  // filtered and sorted copy
  std::vector<ExposureDecision> trace;
};

// Exact-IRI subset test: every recommended ability must be one the agent has.
inline bool ability_match(const std::set<std::string>& recommended,
                          const std::set<std::string>& agent_abilities) {
  return std::includes(agent_abilities.begin(), agent_abilities.end(), recommended.begin(),
                       recommended.end());
}

namespace detail {

inline std::vector<shapes::ShapeBundle> resolve_contexts(const model::ArtifactProfile& ar,
                                                         const model::Signifier& sig) {
  std::vector<shapes::ShapeBundle> out;
  for (const auto& ref : sig.recommended_contexts) {
    auto it = ar.context_defs.find(ref.iri);
    if (it == ar.context_defs.end())
      throw model::ModelError(model::ModelError::Kind::DanglingReference,
                              "context " + ref.iri + " has no definition in the profile");
    out.push_back(shapes::read_shapes(it->second, rdf::iri(ref.iri)));
  }
  return out;
}

}  // namespace detail

inline ExposureResult expose(const model::ArtifactProfile& artifact,
                             const std::optional<model::AgentProfile>& agent,
                             double threshold = kDefaultThreshold) {
  ExposureResult result;
  if (!agent) {
    result.profile = artifact;  // no agent profile: nothing to adjust
    return result;
  }
  result.profile.id = artifact.id;
  result.profile.artifact_iri = artifact.artifact_iri;
  result.profile.workspace_iri = artifact.workspace_iri;
  result.profile.situation = artifact.situation;
  for (const auto& sig : artifact.signifiers) {
    ExposureDecision d;
    d.signifier = sig.id;
    d.ability_ok = ability_match(sig.recommended_abilities, agent->abilities);
    d.context_score = shapes::evaluate_context(detail::resolve_contexts(artifact, sig),
                                               artifact.situation, agent->situation);
    d.exposed = d.ability_ok && d.context_score > threshold;
    result.trace.push_back(d);
    if (d.exposed) {
      result.profile.signifiers.push_back(sig);
      for (const auto& ref : sig.recommended_contexts)
        result.profile.context_defs[ref.iri] = artifact.context_defs.at(ref.iri);
    }
  }
  // Most salient first; signifiers without salience go last. Stable, so the
  // original profile order breaks ties.
  std::stable_sort(result.profile.signifiers.begin(), result.profile.signifiers.end(),
                   [](const model::Signifier& a, const model::Signifier& b) {
                     if (a.salience && b.salience) return *a.salience > *b.salience;
                     return a.salience.has_value() && !b.salience.has_value();
                   });
  return result;
}

}  // namespace hypersig::sem
