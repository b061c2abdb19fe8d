#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace icrl {

enum class EnvId {
  kMaze,
  kMastermind,
  kRps,
  kMinesweeper,
  kHangman,
  kWordle,
  kBlackjack,
  // Training fixture for the GRPO toy trainer; not part of the benchmark suite.
  kTwoArmedBandit,
};

std::string_view to_string(EnvId id);
EnvId env_id_from_string(std::string_view name);

/// The seven benchmark environments, in table order.
const std::vector<EnvId>& benchmark_envs();

struct TableLimits {
  int horizon;
  int episodes;
};

/// Per-episode step cap and episode count used by the benchmark.
TableLimits table_limits(EnvId id);

struct MazeParams {
  int rows = 7;
  int cols = 7;
  int path_min = 3;
  int path_max = 7;
  // Optional fixed layout, one string per row: '#' wall, '.' path, 'S' start, 'G' goal.
  // When set, generation is skipped and the seed is ignored.
  std::vector<std::string> layout;

  bool operator==(const MazeParams&) const = default;
};

struct MastermindParams {
  bool operator==(const MastermindParams&) const = default;
};

struct RpsParams {
  // Explicit opponent distribution over (rock, paper, scissors). Sampled
  // uniformly from the simplex when unset.
  std::optional<std::array<double, 3>> opponent;
  bool operator==(const RpsParams&) const = default;
};

struct MinesweeperParams {
  int rows = 5;
  int cols = 5;
  int mines = 4;
  // Optional fixed mine cells (row, col); overrides random placement.
  std::vector<std::pair<int, int>> mine_cells;
  bool operator==(const MinesweeperParams&) const = default;
};

struct HangmanParams {
  std::string word;  // fixed secret; drawn from the bundled list when empty
  bool operator==(const HangmanParams&) const = default;
};

struct WordleParams {
  std::string word;
  bool operator==(const WordleParams&) const = default;
};

struct BlackjackParams {
  bool operator==(const BlackjackParams&) const = default;
};

struct BanditParams {
  std::optional<int> good_arm;
  bool operator==(const BanditParams&) const = default;
};

using EnvParams = std::variant<MazeParams, MastermindParams, RpsParams, MinesweeperParams,
                               HangmanParams, WordleParams, BlackjackParams, BanditParams>;

EnvParams default_params(EnvId id);
nlohmann::json params_to_json(const EnvParams& params);
EnvParams params_from_json(EnvId id, const nlohmann::json& j);

struct TaskInstance {
  EnvId env_id = EnvId::kMaze;
  std::uint64_t seed = 0;
  int horizon = 1;
  int episodes = 1;
  EnvParams params = MazeParams{};

  bool operator==(const TaskInstance&) const = default;
};

/// Task with the benchmark horizon/episode count and default parameters.
TaskInstance make_task(EnvId id, std::uint64_t seed);

/// Throws InputError on horizon < 1, episodes < 1 or params of the wrong kind.
void validate(const TaskInstance& task);

struct StepRecord {
  int episode_index = 1;  // 1-based
  int step_index = 0;     // 0-based within the episode
  std::string observation;
  std::string action;  // normalized parsed action; empty when nothing could be parsed
  std::string raw_agent_output;
  double reward = 0.0;
  bool terminal = false;
  bool success = false;
  // What the environment showed after the action. Equal to the next step's
  // observation inside an episode; carries the closing message on the last step.
  std::string next_observation;

  bool operator==(const StepRecord&) const = default;
};

struct Transcript {
  TaskInstance task;
  std::vector<StepRecord> steps;
  std::vector<int> episode_lengths;
  bool truncated = false;

  bool operator==(const Transcript&) const = default;

  /// Steps belonging to 1-based episode `e` (empty if never started).
  std::vector<StepRecord> episode(int e) const;
  bool episode_succeeded(int e) const;
};

/// Throws InputError when the transcript breaks a structural invariant.
void validate(const Transcript& transcript);

}  // namespace icrl
