#pragma once

// HTTP environment service: hosts workspaces and resource profiles, runs
// every artifact read through the signifier exposure mechanism, serves
// hypermedia navigation via Link headers, and drives the simulated arm.

#include <optional>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sem.hpp"
#include "store.hpp"
#include "turtle.hpp"

namespace hypersig::service {

namespace v = hypersig::vocab;
using nlohmann::json;

struct Config {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks an ephemeral port at bind time
  double threshold = sem::kDefaultThreshold;
};

// Request body schema for the gripper endpoint; both device positions are
// admissible here, individual signifiers narrow the choice per action.
inline const model::InputSchema& gripper_schema() {
  static const model::InputSchema schema = [] {
    model::InputSchema prop;
    prop.kind = model::InputSchema::Kind::Integer;
    prop.property_name = "manu:hasGripperValue";
    prop.enum_values = {rdf::int_lit(0), rdf::int_lit(500)};
    model::InputSchema obj;
    obj.kind = model::InputSchema::Kind::Object;
    obj.properties = {prop};
    obj.required = {"manu:hasGripperValue"};
    return obj;
  }();
  return schema;
}

inline const model::InputSchema& base_schema() {
  static const model::InputSchema schema = [] {
    model::InputSchema prop;
    prop.kind = model::InputSchema::Kind::String;
    prop.property_name = "target";
    model::InputSchema obj;
    obj.kind = model::InputSchema::Kind::Object;
    obj.properties = {prop};
    obj.required = {"target"};
    return obj;
  }();
  return schema;
}

class EnvService {
 public:
  explicit EnvService(Config cfg = {}) : cfg_(std::move(cfg)) { wire(); }
  ~EnvService() { stop(); }
  EnvService(const EnvService&) = delete;
  EnvService& operator=(const EnvService&) = delete;

  // Binds the configured port (or an ephemeral one when port is 0).
  bool bind() {
    if (cfg_.port == 0) {
      int p = srv_.bind_to_any_port(cfg_.host);
      if (p <= 0) return false;
      cfg_.port = p;
      return true;
    }
    return srv_.bind_to_port(cfg_.host, cfg_.port);
  }

  // Blocking serve loop; call after a successful bind().
  bool listen() { return srv_.listen_after_bind(); }

  // Bind and serve on a background thread; returns once ready.
  bool start() {
    if (!bind()) return false;
    worker_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
    return true;
  }

  void stop() {
    srv_.stop();
    if (worker_.joinable()) worker_.join();
  }

  int port() const { return cfg_.port; }
  std::string base_url() const {
    return "http://" + cfg_.host + ":" + std::to_string(cfg_.port);
  }
  double threshold() const { return cfg_.threshold; }

  store::ResourceStore& resources() { return store_; }
  const store::ResourceStore& resources() const { return store_; }
  std::optional<arm::ArmState> arm_state() const { return store_.arm_state(); }

 private:
  // Origin for resolving relative IRIs in published bodies: requests are
  // interpreted against the URI the client actually used.
  std::string base_for(const httplib::Request& req) const {
    std::string host = req.get_header_value("Host");
    if (host.empty()) host = cfg_.host + ":" + std::to_string(cfg_.port);
    return "http://" + host;
  }

  static void text(httplib::Response& res, int status, const std::string& body) {
    res.status = status;
    res.set_content(body + "\n", "text/plain");
  }

  static void turtle(httplib::Response& res, const rdf::Graph& g) {
    res.status = 200;
    res.set_content(turtle::serialize(g), "text/turtle");
  }

  // Maps parse/model/shape failures on published bodies to client errors.
  template <typename Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const rdf::SyntaxError& e) {
      text(res, 400, std::string("invalid turtle: ") + e.what());
    } catch (const rdf::UnresolvedPrefix& e) {
      text(res, 400, std::string("invalid turtle: ") + e.what());
    } catch (const rdf::MalformedList& e) {
      text(res, 400, std::string("invalid graph: ") + e.what());
    } catch (const model::ModelError& e) {
      text(res, 400, std::string("invalid profile: ") + e.what());
    } catch (const shapes::ShapeError& e) {
      text(res, 400, std::string("invalid context shape: ") + e.what());
    } catch (const std::exception& e) {
      text(res, 500, e.what());
    }
  }

  void wire() {
    srv_.Post("/workspaces", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        rdf::Graph g = turtle::parse(req.body, base_for(req) + "/workspaces/");
        std::vector<std::string> nodes;
        for (const auto& n : g.subjects_of_type(v::hmas_Workspace))
          if (rdf::is_iri(n)) nodes.push_back(rdf::iri_of(n));
        if (nodes.size() != 1) {
          text(res, 400, "body must describe exactly one workspace");
          return;
        }
        std::string iri = nodes.front();
        auto slash = iri.find_last_of('/');
        std::string id = slash == std::string::npos ? iri : iri.substr(slash + 1);
        if (id.empty() || id.find('#') != std::string::npos) {
          text(res, 400, "workspace IRI must end in a path segment");
          return;
        }
        std::string uri = base_for(req) + "/workspaces/" + id;
        if (!store_.create_workspace(id, uri)) {
          text(res, 409, "workspace already exists: " + id);
          return;
        }
        res.status = 201;
        res.set_header("Location", uri);
      });
    });

    srv_.Get("/workspaces/:w", [this](const httplib::Request& req, httplib::Response& res) {
      auto ws = store_.workspace(req.path_params.at("w"));
      if (!ws) {
        text(res, 404, "no such workspace");
        return;
      }
      rdf::Graph g;
      g.set_prefix("hmas", v::hmas);
      g.insert(rdf::iri(ws->uri), rdf::iri(rdf::rdf_type), rdf::iri(v::hmas_Workspace));
      std::string links;
      for (const auto& m : ws->members) {
        g.insert(rdf::iri(ws->uri), rdf::iri(v::hmas_contains), rdf::iri(m));
        links += (links.empty() ? "" : ", ") + ("<" + m + ">; rel=\"contains\"");
      }
      if (!links.empty()) res.set_header("Link", links);
      turtle(res, g);
    });

    srv_.Put("/workspaces/:w/artifacts/:a",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string w = req.path_params.at("w");
                 const std::string a = req.path_params.at("a");
                 if (!store_.workspace(w)) {
                   text(res, 404, "no such workspace");
                   return;
                 }
                 std::string uri = base_for(req) + req.path;
                 rdf::Graph g = turtle::parse(req.body, uri);
                 model::ArtifactProfile profile = model::read_artifact_profile(g);
                 // Surface bad context shapes at publication, not first read.
                 for (const auto& sig : profile.signifiers)
                   sem::detail::resolve_contexts(profile, sig);
                 profile.workspace_iri = base_for(req) + "/workspaces/" + w;
                 auto outcome = store_.put_artifact(w, {a, uri, std::move(profile)});
                 if (outcome == store::PutOutcome::NoWorkspace) {
                   text(res, 404, "no such workspace");
                   return;
                 }
                 res.status = outcome == store::PutOutcome::Created ? 201 : 204;
                 if (res.status == 201) res.set_header("Location", uri);
               });
             });

    srv_.Put("/workspaces/:w/agents/:g",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string w = req.path_params.at("w");
                 const std::string gid = req.path_params.at("g");
                 if (!store_.workspace(w)) {
                   text(res, 404, "no such workspace");
                   return;
                 }
                 std::string uri = base_for(req) + req.path;
                 rdf::Graph g = turtle::parse(req.body, uri);
                 model::AgentProfile profile = model::read_agent_profile(g);
                 profile.workspace_iri = base_for(req) + "/workspaces/" + w;
                 auto outcome = store_.put_agent(w, {gid, uri, std::move(profile), g});
                 if (outcome == store::PutOutcome::NoWorkspace) {
                   text(res, 404, "no such workspace");
                   return;
                 }
                 res.status = outcome == store::PutOutcome::Created ? 201 : 204;
                 if (res.status == 201) res.set_header("Location", uri);
               });
             });

    srv_.Get("/workspaces/:w/artifacts/:a",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string w = req.path_params.at("w");
                 auto art = store_.artifact(w, req.path_params.at("a"));
                 if (!art) {
                   text(res, 404, "no such artifact");
                   return;
                 }
                 double t = cfg_.threshold;
                 if (req.has_param("t")) {
                   try {
                     std::size_t used = 0;
                     const std::string raw = req.get_param_value("t");
                     t = std::stod(raw, &used);
                     if (used != raw.size()) throw std::invalid_argument(raw);
                   } catch (const std::exception&) {
                     text(res, 400, "t must be a number in [0,1]");
                     return;
                   }
                   if (!(t >= 0.0 && t <= 1.0)) {
                     text(res, 400, "t must be a number in [0,1]");
                     return;
                   }
                 }
                 std::optional<model::AgentProfile> agent;
                 const std::string agent_iri = req.get_header_value("X-Agent-IRI");
                 if (!agent_iri.empty()) agent = store_.agent_by_iri(agent_iri);
                 sem::ExposureResult result = sem::expose(art->profile, agent, t);
                 std::string links = "<" + art->profile.artifact_iri + ">; rel=\"describes\"";
                 if (auto ws = store_.workspace(w))
                   links += ", <" + ws->uri + ">; rel=\"contains\"";
                 for (const auto& sig : result.profile.signifiers)
                   links += ", <" + sig.id + ">; rel=\"" + v::hint_exposesSignifier + "\"";
                 res.set_header("Link", links);
                 turtle(res, model::write_artifact_profile(result.profile));
               });
             });

    srv_.Get("/workspaces/:w/agents/:g",
             [this](const httplib::Request& req, httplib::Response& res) {
               auto ag = store_.agent(req.path_params.at("w"), req.path_params.at("g"));
               if (!ag) {
                 text(res, 404, "no such agent");
                 return;
               }
               turtle(res, ag->source);
             });

    srv_.Get("/workspaces/:w/interactions",
             [this](const httplib::Request& req, httplib::Response& res) {
               const std::string w = req.path_params.at("w");
               auto ws = store_.workspace(w);
               if (!ws) {
                 text(res, 404, "no such workspace");
                 return;
               }
               rdf::Graph g;
               g.set_prefix("hint", v::hint);
               g.set_prefix("xsd", v::xsd);
               for (const auto& rec : ws->interactions) {
                 rdf::Term b = rdf::blank("i" + std::to_string(rec.sequence));
                 g.insert(b, rdf::iri(rdf::rdf_type), rdf::iri(v::hint_Interaction));
                 g.insert(b, rdf::iri(v::hint_byAgent), rdf::iri(rec.agent_iri));
                 g.insert(b, rdf::iri(v::hint_onResource), rdf::iri(rec.target));
                 g.insert(b, rdf::iri(v::hint_sequenceNumber), rdf::int_lit(rec.sequence));
                 g.insert(b, rdf::iri(v::hint_outcome), rdf::lit(rec.outcome, rdf::xsd_string));
               }
               turtle(res, g);
             });

    srv_.Post("/leubot/operator", [this](const httplib::Request& req, httplib::Response& res) {
      auto token = store_.mint_token(req.get_header_value("X-Agent-IRI"));
      if (!token) {
        text(res, 404, "no arm artifact published");
        return;
      }
      res.status = 201;
      res.set_content(json{{"token", *token}}.dump(), "application/json");
    });

    srv_.Put("/leubot/gripper", [this](const httplib::Request& req, httplib::Response& res) {
      arm_command(req, res, gripper_schema(), "/leubot/gripper", [](arm::ArmState& s,
                                                                    const json& body) {
        return arm::set_gripper(s, body.at("manu:hasGripperValue").get<std::int64_t>());
      });
    });

    srv_.Put("/leubot/base", [this](const httplib::Request& req, httplib::Response& res) {
      arm_command(req, res, base_schema(), "/leubot/base", [](arm::ArmState& s,
                                                              const json& body) {
        return arm::move_base(s, body.at("target").get<std::string>());
      });
    });
  }

  // Shared plumbing for authenticated, schema-validated arm commands.
  template <typename Fn>
  void arm_command(const httplib::Request& req, httplib::Response& res,
                   const model::InputSchema& schema, const std::string& path, Fn&& fn) {
    const std::string token = req.get_header_value("X-Operator-Token");
    if (token.empty() || !store_.token_valid(token)) {
      text(res, 401, "missing or invalid operator token");
      return;
    }
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) {
      text(res, 400, "body must be JSON");
      return;
    }
    auto violations = model::validate_input(schema, body);
    if (!violations.empty()) {
      std::string detail;
      for (const auto& viol : violations)
        detail += (detail.empty() ? "" : "; ") + viol.path + ": " + viol.detail;
      text(res, 422, detail);
      return;
    }
    arm::CommandResult r = store_.command_arm([&](arm::ArmState& s) { return fn(s, body); });
    if (r.ok()) {
      if (auto ref = store_.arm_ref())
        store_.log_interaction(ref->workspace, store_.token_agent(token),
                               base_for(req) + path, "succeeded");
      res.status = r.status;
      res.set_content(json{{"result", r.message}}.dump(), "application/json");
    } else {
      res.status = r.status;
      res.set_content(json{{"error", r.message}}.dump(), "application/json");
    }
  }

  Config cfg_;
  httplib::Server srv_;
  store::ResourceStore store_;
  std::thread worker_;
};

}  // namespace hypersig::service
