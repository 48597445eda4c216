// hypersig: operator entry point for the hypermedia signifier environment.
// Subcommands: serve (run the HTTP environment), seed (publish fixtures),
// scenario (full two-agent pick-and-place run), prs / strips (run one agent
// against a live environment), report (summarize a scenario report file).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hypersig/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// sysexits(3) conventions
constexpr int kOk = 0;
constexpr int kFailure = 1;    // run failed (server down, goal missed, ...)
constexpr int kBindFail = 2;   // could not bind the requested port
constexpr int kUsage = 64;     // bad command line
constexpr int kDataErr = 65;   // unreadable report content
constexpr int kNoInput = 66;   // missing fixture dir / input file

std::optional<std::pair<std::string, std::string>> parse_pair(const std::string& raw) {
  auto comma = raw.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= raw.size()) return std::nullopt;
  return std::make_pair(raw.substr(0, comma), raw.substr(comma + 1));
}

int run_agent(bool is_prs, const std::string& env_base, const std::string& workspace,
              const std::string& agent_id, const fs::path& profile_path,
              const std::optional<std::string>& agent_iri,
              const std::optional<std::pair<std::string, std::string>>& goal,
              std::optional<double> threshold) {
  if (!fs::is_regular_file(profile_path)) {
    std::cerr << "profile fixture not found: " << profile_path << "\n";
    return kNoInput;
  }
  hypersig::agents::RunConfig cfg;
  cfg.env_base = env_base;
  cfg.workspace = workspace;
  cfg.agent_id = agent_id;
  cfg.profile_ttl = hypersig::scenario::slurp(profile_path);
  cfg.agent_iri = agent_iri;
  cfg.goal = goal;
  cfg.threshold = threshold;
  cfg.trace = &std::cout;
  try {
    hypersig::agents::RunReport r =
        is_prs ? hypersig::agents::prs_run(cfg) : hypersig::agents::strips_run(cfg);
    std::cout << json{{"event", "done"},
                      {"goal_achieved", r.goal_achieved},
                      {"exposed", r.exposed_count},
                      {"plan_length", r.plan_length},
                      {"actions", r.actions_executed}}
                     .dump()
              << "\n";
    return r.goal_achieved ? kOk : kFailure;
  } catch (const std::exception& e) {
    std::cout << json{{"event", "error"}, {"message", e.what()}}.dump() << "\n";
    return kFailure;
  }
}

void print_agent_line(std::ostream& os, const std::string& name, const json& a) {
  os << name << ": ";
  if (!a.value("ran", false)) {
    os << "skipped\n";
    return;
  }
  os << (a.value("goal_achieved", false) ? "goal achieved" : "goal NOT achieved")
     << ", exposed=" << a.value("exposed", 0) << ", plan=" << a.value("plan_length", 0)
     << ", actions=" << a.value("actions", 0) << ", " << a.value("wall_ms", 0) << " ms";
  if (!a["error"].is_null()) os << ", error: " << a["error"].get<std::string>();
  os << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypermedia signifier environment and agent harness"};
  app.require_subcommand(1);

  // serve ---------------------------------------------------------------
  auto* serve = app.add_subcommand("serve", "run the environment server");
  std::string host = "127.0.0.1";
  int port = 8080;
  double threshold = hypersig::sem::kDefaultThreshold;
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port (0 picks an ephemeral one)");
  serve->add_option("--threshold", threshold, "default exposure threshold t")
      ->check(CLI::Range(0.0, 1.0));

  // seed ----------------------------------------------------------------
  auto* seedc = app.add_subcommand("seed", "publish the workspace and arm fixtures");
  std::string env_base = "http://127.0.0.1:8080";
  std::string fixtures = "fixtures";
  seedc->add_option("--env-base", env_base, "environment base URL");
  seedc->add_option("--fixtures", fixtures, "fixture directory");

  // scenario ------------------------------------------------------------
  auto* scen = app.add_subcommand("scenario", "run the two-agent pick-and-place scenario");
  int scen_port = 0;
  double scen_threshold = hypersig::sem::kDefaultThreshold;
  std::string scen_fixtures = "fixtures";
  std::string only;
  std::string out_path;
  bool trace = false;
  scen->add_option("--port", scen_port, "server port (default: ephemeral)");
  scen->add_option("--threshold", scen_threshold, "exposure threshold t")
      ->check(CLI::Range(0.0, 1.0));
  scen->add_option("--fixtures", scen_fixtures, "fixture directory");
  scen->add_option("--only", only, "run a single agent")->check(CLI::IsMember({"prs", "strips"}));
  scen->add_option("--out", out_path, "write the JSON report to this file");
  scen->add_flag("--trace", trace, "emit agent traces as JSON-lines on stderr");

  // prs / strips ----------------------------------------------------------
  std::string a_env = "http://127.0.0.1:8080";
  std::string a_workspace = "wksp1";
  std::string a_fixtures = "fixtures";
  std::string a_profile;
  std::string a_agent_iri;
  std::string a_desire;
  std::string a_goal;
  double a_threshold = -1.0;  // unset

  auto* prs = app.add_subcommand("prs", "run the BDI agent against a live environment");
  auto* strips = app.add_subcommand("strips", "run the planning agent against a live environment");
  for (CLI::App* sub : {prs, strips}) {
    sub->add_option("--env-base", a_env, "environment base URL");
    sub->add_option("--workspace", a_workspace, "workspace id");
    sub->add_option("--fixtures", a_fixtures, "fixture directory (for the default profile)");
    sub->add_option("--profile", a_profile, "agent profile Turtle file (overrides --fixtures)");
    sub->add_option("--agent-iri", a_agent_iri, "value for the X-Agent-IRI header");
    sub->add_option("--threshold", a_threshold, "exposure threshold passed as ?t=")
        ->check(CLI::Range(0.0, 1.0));
  }
  prs->add_option("--desire", a_desire, "override desire as ITEM-IRI,TARGET-IRI");
  strips->add_option("--goal", a_goal, "goal as ITEM-IRI,TARGET-IRI")->required();

  // report ----------------------------------------------------------------
  auto* rep = app.add_subcommand("report", "summarize a scenario report file");
  std::string report_file;
  rep->add_option("file", report_file, "report JSON written by `scenario --out`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*serve) {
    hypersig::service::EnvService env({host, port, threshold});
    if (!env.bind()) {
      std::cerr << "cannot bind " << host << ":" << port << "\n";
      return kBindFail;
    }
    std::cerr << "environment listening on " << env.base_url() << "\n";
    env.listen();
    return kOk;
  }

  if (*seedc) {
    if (!fs::is_directory(fixtures)) {
      std::cerr << "fixture directory not found: " << fixtures << "\n";
      return kNoInput;
    }
    try {
      auto seeded = hypersig::scenario::seed(env_base, {fixtures});
      std::cout << json{{"workspace", seeded.workspace_id}, {"artifact", seeded.artifact_url}}
                       .dump()
                << "\n";
      return kOk;
    } catch (const std::exception& e) {
      std::cerr << "seed failed: " << e.what() << "\n";
      return kFailure;
    }
  }

  if (*scen) {
    if (!fs::is_directory(scen_fixtures)) {
      std::cerr << "fixture directory not found: " << scen_fixtures << "\n";
      return kNoInput;
    }
    hypersig::scenario::ScenarioOptions opts;
    opts.port = scen_port;
    opts.threshold = scen_threshold;
    opts.fixtures = scen_fixtures;
    opts.only = only;
    opts.trace = trace ? &std::cerr : nullptr;
    try {
      hypersig::scenario::ScenarioReport report = hypersig::scenario::run_scenario(opts);
      std::string doc = report.to_json().dump(2) + "\n";
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        f << doc;
      }
      std::cout << doc;
      return report.success() ? kOk : kFailure;
    } catch (const std::exception& e) {
      std::cerr << "scenario failed: " << e.what() << "\n";
      return kFailure;
    }
  }

  if (*prs || *strips) {
    const bool is_prs = static_cast<bool>(*prs);
    std::optional<std::pair<std::string, std::string>> goal;
    const std::string& raw = is_prs ? a_desire : a_goal;
    if (!raw.empty()) {
      goal = parse_pair(raw);
      if (!goal) {
        std::cerr << "expected ITEM-IRI,TARGET-IRI but got: " << raw << "\n";
        return kUsage;
      }
    }
    fs::path profile = a_profile.empty()
                           ? fs::path(a_fixtures) / (is_prs ? "agent-profile-prs.ttl"
                                                            : "agent-profile-strips.ttl")
                           : fs::path(a_profile);
    return run_agent(is_prs, a_env, a_workspace,
                     is_prs ? hypersig::scenario::kPrsAgentId
                            : hypersig::scenario::kStripsAgentId,
                     profile,
                     a_agent_iri.empty() ? std::nullopt : std::make_optional(a_agent_iri), goal,
                     a_threshold < 0 ? std::nullopt : std::make_optional(a_threshold));
  }

  if (*rep) {
    std::ifstream f(report_file, std::ios::binary);
    if (!f) {
      std::cerr << "cannot read report: " << report_file << "\n";
      return kNoInput;
    }
    json doc = json::parse(f, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      std::cerr << "not a scenario report: " << report_file << "\n";
      return kDataErr;
    }
    print_agent_line(std::cout, "prs   ", doc.value("prs", json::object()));
    print_agent_line(std::cout, "strips", doc.value("strips", json::object()));
    std::cout << "interactions=" << doc.value("interactions", 0)
              << " coherence=" << (doc.value("coherence_ok", false) ? "ok" : "VIOLATED")
              << " invariants=" << (doc.value("invariants_ok", false) ? "ok" : "VIOLATED")
              << "\n";
    return doc.value("success", false) ? kOk : kFailure;
  }

  return kUsage;
}
