#include "icrl/config.hpp"

#include <algorithm>
#include <fstream>

#include "icrl/agents.hpp"
#include "icrl/errors.hpp"

namespace icrl {

using nlohmann::json;

namespace {

const std::vector<std::string> kAgentKinds = {"random", "scripted", "repeat-last-episode",
                                              "fail-then-diverge", "oracle", "remote-llm"};

void only_keys(const json& j, std::initializer_list<std::string_view> keys, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

SuiteEntry entry_from_json(const json& j) {
  only_keys(j, {"env", "instances", "seed", "horizon", "episodes", "params"}, "suite entry");
  SuiteEntry e;
  e.env = env_id_from_string(j.at("env").get<std::string>());
  e.instances = j.value("instances", e.instances);
  e.seed = j.value("seed", e.seed);
  e.horizon = j.value("horizon", e.horizon);
  e.episodes = j.value("episodes", e.episodes);
  if (j.contains("params")) e.params = j.at("params");
  if (e.instances < 1) throw ConfigError("instances must be at least 1");
  if (e.horizon < 0 || e.episodes < 0) throw ConfigError("horizon and episodes must be >= 0");
  return e;
}

AgentSpec agent_from_json(const json& j) {
  only_keys(j, {"kind", "seed", "scripts", "remote", "reveal_map"}, "agent");
  AgentSpec a;
  a.kind = j.value("kind", a.kind);
  if (std::find(kAgentKinds.begin(), kAgentKinds.end(), a.kind) == kAgentKinds.end()) {
    throw ConfigError("unknown agent kind '" + a.kind + "'");
  }
  a.seed = j.value("seed", a.seed);
  a.scripts = j.value("scripts", a.scripts);
  a.reveal_map = j.value("reveal_map", a.reveal_map);
  if (j.contains("remote")) a.remote = remote_config_from_json(j.at("remote"));
  if ((a.kind == "scripted" || a.kind == "fail-then-diverge") && a.scripts.empty()) {
    throw ConfigError(a.kind + " agent needs scripts");
  }
  if (a.kind == "remote-llm" && !a.remote) throw ConfigError("remote-llm agent needs remote settings");
  return a;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  only_keys(j, {"suite", "agent", "budget_chars", "budget_steps", "rollouts", "parallel", "seed_offset", "out"},
            "run config");
  try {
    RunConfig c;
    for (const auto& e : j.at("suite")) c.suite.push_back(entry_from_json(e));
    if (c.suite.empty()) throw ConfigError("suite is empty");
    if (j.contains("agent")) c.agent = agent_from_json(j.at("agent"));
    if (j.contains("budget_chars")) c.budget_chars = j.at("budget_chars").get<std::size_t>();
    if (j.contains("budget_steps")) c.budget_steps = j.at("budget_steps").get<std::size_t>();
    c.rollouts = j.value("rollouts", c.rollouts);
    c.parallel = j.value("parallel", c.parallel);
    c.seed_offset = j.value("seed_offset", c.seed_offset);
    c.out = j.value("out", c.out);
    if (c.rollouts < 1 || c.parallel < 1) throw ConfigError("rollouts and parallel must be at least 1");
    for (const auto& e : c.suite) {
      for (const auto& task : expand(e, 0)) validate(task);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const RunConfig& c) {
  json suite = json::array();
  for (const auto& e : c.suite) {
    json j = {{"env", std::string(to_string(e.env))},
              {"instances", e.instances},
              {"seed", e.seed},
              {"horizon", e.horizon},
              {"episodes", e.episodes}};
    if (e.params) j["params"] = *e.params;
    suite.push_back(j);
  }
  json agent = {{"kind", c.agent.kind}, {"seed", c.agent.seed}, {"reveal_map", c.agent.reveal_map}};
  if (!c.agent.scripts.empty()) agent["scripts"] = c.agent.scripts;
  if (c.agent.remote) agent["remote"] = remote_config_to_json(*c.agent.remote);
  json j = {{"suite", suite},
            {"agent", agent},
            {"rollouts", c.rollouts},
            {"parallel", c.parallel},
            {"seed_offset", c.seed_offset},
            {"out", c.out}};
  if (c.budget_chars) j["budget_chars"] = *c.budget_chars;
  if (c.budget_steps) j["budget_steps"] = *c.budget_steps;
  return j;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config " + path.string() + " is not valid JSON");
  return run_config_from_json(j);
}

std::vector<TaskInstance> expand(const SuiteEntry& entry, std::uint64_t seed_offset) {
  std::vector<TaskInstance> out;
  for (int i = 0; i < entry.instances; ++i) {
    TaskInstance task = make_task(entry.env, entry.seed + seed_offset + static_cast<std::uint64_t>(i));
    if (entry.horizon > 0) task.horizon = entry.horizon;
    if (entry.episodes > 0) task.episodes = entry.episodes;
    if (entry.params) task.params = params_from_json(entry.env, *entry.params);
    out.push_back(std::move(task));
  }
  return out;
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const TaskInstance& task, int rollout) {
  const std::uint64_t seed = spec.seed * 1000003ULL + task.seed * 7919ULL + static_cast<std::uint64_t>(rollout);
  if (spec.kind == "random") return std::make_unique<RandomAgent>(task.env_id, seed);
  if (spec.kind == "scripted" || spec.kind == "fail-then-diverge") {
    if (spec.kind == "fail-then-diverge" && spec.scripts.size() < 2) {
      throw ConfigError("fail-then-diverge needs one script per episode");
    }
    return std::make_unique<ScriptedAgent>(spec.scripts);
  }
  if (spec.kind == "repeat-last-episode") {
    return std::make_unique<RepeatLastEpisodeAgent>(std::make_unique<RandomAgent>(task.env_id, seed));
  }
  if (spec.kind == "oracle") {
    if (task.env_id == EnvId::kMastermind) return std::make_unique<MastermindOracleAgent>();
    if (task.env_id == EnvId::kMaze) {
      const auto env = make_environment(task);
      const auto& layout = dynamic_cast<const MazeEnv&>(*env).layout();
      if (spec.reveal_map) return std::make_unique<MazeOracleAgent>(MazeOracleAgent::with_revealed_map(layout));
      return std::make_unique<MazeOracleAgent>(layout.grid.rows(), layout.grid.cols());
    }
    throw ConfigError("no oracle agent for " + std::string(to_string(task.env_id)));
  }
  if (spec.kind == "remote-llm") {
    if (!spec.remote) throw ConfigError("remote-llm agent needs remote settings");
    return std::make_unique<RemoteLlmAgent>(*spec.remote);
  }
  throw ConfigError("unknown agent kind '" + spec.kind + "'");
}

}  // namespace icrl
