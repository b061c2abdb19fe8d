#include "icrl/agents.hpp"

#include <algorithm>
#include <mutex>
#include <regex>

#include "icrl/envs/rps.hpp"
#include "icrl/errors.hpp"
#include "icrl/word_lists.hpp"

namespace icrl {

HistoryCursor HistoryCursor::from(std::span<const ChatMessage> history) {
  HistoryCursor cur;
  for (const auto& m : history) {
    if (m.role == Role::kUser && m.content.starts_with(kNewEpisodeMarker)) {
      ++cur.episode;
      cur.step = 0;
      cur.actions.emplace_back();
    } else if (m.role == Role::kAssistant) {
      if (cur.actions.empty()) throw InputError("assistant turn before any episode began");
      cur.actions.back().push_back(parse_action(m.content).value_or(""));
      ++cur.step;
    }
  }
  return cur;
}

std::string RandomAgent::act(std::span<const ChatMessage> /*history*/) {
  switch (env_) {
    case EnvId::kMaze:
      return boxed(to_string(kDirections[rng_.below(4)]));
    case EnvId::kMastermind: {
      const auto& codes = distinct_codes();
      return boxed(format_code(codes[rng_.below(codes.size())]));
    }
    case EnvId::kRps:
      return boxed(to_string(static_cast<RpsMove>(rng_.below(3))));
    case EnvId::kMinesweeper: {
      MinesweeperParams p;
      if (task_) p = std::get<MinesweeperParams>(task_->params);
      return boxed("reveal " + std::to_string(rng_.below(p.rows)) + " " + std::to_string(rng_.below(p.cols)));
    }
    case EnvId::kHangman:
      return boxed(std::string(1, static_cast<char>('A' + rng_.below(26))));
    case EnvId::kWordle: {
      const auto& words = wordle_words();
      return boxed(words[rng_.below(words.size())]);
    }
    case EnvId::kBlackjack:
      return rng_.below(2) == 0 ? boxed("stand") : boxed("hit " + std::to_string(rng_.below(48)));
    case EnvId::kTwoArmedBandit:
      return boxed(std::to_string(rng_.below(2)));
  }
  throw InputError("unknown environment id");
}

std::string ScriptedAgent::act(std::span<const ChatMessage> history) {
  const auto cur = HistoryCursor::from(history);
  if (scripts_.empty()) throw InputError("scripted agent has no scripts");
  const auto& script = scripts_[std::min<std::size_t>(std::max(cur.episode, 1) - 1, scripts_.size() - 1)];
  if (script.empty()) throw InputError("scripted agent has an empty script");
  return boxed(script[std::min<std::size_t>(cur.step, script.size() - 1)]);
}

std::string RepeatLastEpisodeAgent::act(std::span<const ChatMessage> history) {
  const auto cur = HistoryCursor::from(history);
  if (cur.episode >= 2) {
    const auto& previous = cur.actions[cur.episode - 2];
    if (static_cast<std::size_t>(cur.step) < previous.size() && !previous[cur.step].empty()) {
      return boxed(previous[cur.step]);
    }
  }
  return first_->act(history);
}

MazeOracleAgent MazeOracleAgent::with_revealed_map(const MazeLayout& layout, MazeRewards rewards) {
  MazeOracleAgent agent(layout.grid.rows(), layout.grid.cols(), rewards);
  agent.revealed_ = layout;
  return agent;
}

BeliefMap MazeOracleAgent::belief_from(std::span<const ChatMessage> history) const {
  BeliefMap belief = revealed_ ? BeliefMap::fully_revealed(*revealed_) : BeliefMap(rows_, cols_);
  std::optional<Cell> position;
  std::optional<Direction> last_move;
  for (const auto& m : history) {
    if (m.role == Role::kAssistant) {
      const auto action = parse_action(m.content);
      last_move = action ? direction_from_string(*action) : std::nullopt;
    } else if (m.role == Role::kUser) {
      if (m.content.find("Congratulations") != std::string::npos && position && last_move) {
        belief.mark_goal(neighbor(*position, *last_move));
      }
      if (auto obs = parse_maze_observation(m.content)) {
        belief.update(*obs);
        position = obs->position;
      }
    }
  }
  return belief;
}

std::string MazeOracleAgent::act(std::span<const ChatMessage> history) {
  const auto cur = HistoryCursor::from(history);
  const BeliefMap belief = belief_from(history);
  const int remaining = std::max(horizon_ - cur.step, 1);
  return boxed(to_string(maze_oracle_action(belief, remaining, rewards_)));
}

CandidateSet MastermindOracleAgent::candidates_from(std::span<const ChatMessage> history) const {
  static const std::regex feedback(R"(Guess \d+: ([1-6]) ([1-6]) ([1-6]) -> (\d) black, (\d) white)");
  CandidateSet candidates = CandidateSet::uniform();
  for (const auto& m : history) {
    if (m.role != Role::kUser) continue;
    std::smatch match;
    if (!std::regex_search(m.content, match, feedback)) continue;
    const Code guess = {std::stoi(match[1]), std::stoi(match[2]), std::stoi(match[3])};
    const Pegs pegs = {std::stoi(match[4]), std::stoi(match[5])};
    if (pegs.solved()) {
      candidates = CandidateSet({guess});
    } else {
      candidates = candidates.filter(guess, pegs);
    }
    if (candidates.empty()) throw ConsistencyError("mastermind feedback admits no secret");
  }
  return candidates;
}

std::string MastermindOracleAgent::act(std::span<const ChatMessage> history) {
  const auto cur = HistoryCursor::from(history);
  const CandidateSet candidates = candidates_from(history);
  const int remaining = std::max(horizon_ - cur.step, 1);
  static std::mutex mutex;
  static MastermindSolver solver;
  std::lock_guard lock(mutex);
  return boxed(format_code(solver.best(candidates, remaining).guess));
}

}  // namespace icrl
