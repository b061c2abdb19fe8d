#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icrl/oracles.hpp"
#include "icrl/protocol.hpp"
#include "icrl/rng.hpp"

namespace icrl {

/// Episode/step position and past actions, recovered from a chat history.
struct HistoryCursor {
  int episode = 0;  // 1-based episode of the pending observation
  int step = 0;     // 0-based step within it
  std::vector<std::vector<std::string>> actions;  // parsed actions per finished/current episode

  static HistoryCursor from(std::span<const ChatMessage> history);
};

/// Uniformly random syntactically legal action for the game.
class RandomAgent final : public Agent {
 public:
  RandomAgent(EnvId env, std::uint64_t seed) : env_(env), rng_(seed, "random-agent") {}
  void begin_task(const TaskInstance& task) override { task_ = task; }
  std::string act(std::span<const ChatMessage> history) override;

 private:
  EnvId env_;
  Rng rng_;
  std::optional<TaskInstance> task_;
};

/// Plays a fixed action list per episode; past the end of a list it repeats
/// the list's last action. One list covering every episode is the plain
/// scripted agent; distinct lists give the fail-then-diverge probe.
class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(std::vector<std::vector<std::string>> per_episode)
      : scripts_(std::move(per_episode)) {}
  static ScriptedAgent same_every_episode(std::vector<std::string> actions) {
    return ScriptedAgent({std::move(actions)});
  }
  std::string act(std::span<const ChatMessage> history) override;

 private:
  std::vector<std::vector<std::string>> scripts_;
};

/// Episode 1 comes from `first`; every later episode replays the actions of
/// the episode before it, falling back to `first` when that runs out.
class RepeatLastEpisodeAgent final : public Agent {
 public:
  explicit RepeatLastEpisodeAgent(std::unique_ptr<Agent> first) : first_(std::move(first)) {}
  void begin_task(const TaskInstance& task) override { first_->begin_task(task); }
  std::string act(std::span<const ChatMessage> history) override;

 private:
  std::unique_ptr<Agent> first_;
};

/// Rebuilds the belief map from the whole history each turn and follows the
/// value-iteration oracle. Belief persists across episodes of one task.
class MazeOracleAgent final : public Agent {
 public:
  MazeOracleAgent(int rows, int cols, MazeRewards rewards = {})
      : rows_(rows), cols_(cols), rewards_(rewards) {}
  /// Starts from the true map (full-information debug mode).
  static MazeOracleAgent with_revealed_map(const MazeLayout& layout, MazeRewards rewards = {});

  void begin_task(const TaskInstance& task) override { horizon_ = task.horizon; }
  std::string act(std::span<const ChatMessage> history) override;
  BeliefMap belief_from(std::span<const ChatMessage> history) const;

 private:
  int rows_;
  int cols_;
  MazeRewards rewards_;
  int horizon_ = 9;
  std::optional<MazeLayout> revealed_;
};

/// Filters candidates by every feedback in the history, then plays the
/// dynamic-program guess for the turns left in the episode. The solver memo
/// is shared by every instance in the process.
class MastermindOracleAgent final : public Agent {
 public:
  void begin_task(const TaskInstance& task) override { horizon_ = task.horizon; }
  std::string act(std::span<const ChatMessage> history) override;
  CandidateSet candidates_from(std::span<const ChatMessage> history) const;

 private:
  int horizon_ = 3;
};

}  // namespace icrl
