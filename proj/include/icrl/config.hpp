#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icrl/protocol.hpp"
#include "icrl/remote_agent.hpp"
#include "icrl/task.hpp"

namespace icrl {

struct SuiteEntry {
  EnvId env = EnvId::kMaze;
  int instances = 1;
  std::uint64_t seed = 0;  // first instance seed; instance i uses seed + i
  int horizon = 0;         // 0: benchmark default
  int episodes = 0;        // 0: benchmark default
  std::optional<nlohmann::json> params;
};

struct AgentSpec {
  std::string kind = "random";  // random | scripted | repeat-last-episode | fail-then-diverge | oracle | remote-llm
  std::uint64_t seed = 0;
  std::vector<std::vector<std::string>> scripts;  // scripted / fail-then-diverge
  std::optional<RemoteConfig> remote;
  bool reveal_map = false;  // maze oracle full-information mode
};

struct RunConfig {
  std::vector<SuiteEntry> suite;
  AgentSpec agent;
  std::optional<std::size_t> budget_chars;
  std::optional<std::size_t> budget_steps;
  int rollouts = 1;
  int parallel = 1;
  std::uint64_t seed_offset = 0;
  std::string out = "runs/latest";
};

/// Strict parse: unknown keys and bad values raise ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);
RunConfig load_run_config(const std::filesystem::path& path);

/// Concrete tasks of a suite entry, seeds shifted by the run's seed offset.
std::vector<TaskInstance> expand(const SuiteEntry& entry, std::uint64_t seed_offset);

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const TaskInstance& task,
                                  int rollout);

}  // namespace icrl
