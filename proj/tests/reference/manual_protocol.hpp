// Hand-written multi-episode loop used to build golden transcripts. It talks
// to the environment directly and spells out every record field.
#pragma once

#include <string>
#include <vector>

#include "icrl/environment.hpp"
#include "icrl/task.hpp"

namespace ref {

inline icrl::Transcript manual_run(const icrl::TaskInstance& task, const std::vector<std::string>& script) {
  auto env = icrl::make_environment(task);
  icrl::Transcript out;
  out.task = task;
  for (int e = 1; e <= task.episodes; ++e) {
    std::string obs = "New episode begins. " + env->reset();
    int length = 0;
    for (int t = 0; t < task.horizon; ++t) {
      const std::string& a = script[std::min<std::size_t>(t, script.size() - 1)];
      icrl::StepRecord s;
      s.episode_index = e;
      s.step_index = t;
      s.observation = obs;
      s.raw_agent_output = "\\boxed{" + a + "}";
      s.action = env->normalize_action(a);
      const icrl::StepOutcome o = env->step(s.action);
      s.reward = o.reward;
      s.terminal = o.terminal;
      s.success = o.success;
      s.next_observation = o.observation;
      if (t == task.horizon - 1 && !o.terminal) {
        s.next_observation += " The episode has ended because the step limit was reached.";
      }
      obs = s.next_observation;
      out.steps.push_back(s);
      ++length;
      if (o.terminal) break;
    }
    out.episode_lengths.push_back(length);
  }
  return out;
}

struct GoldenCase {
  icrl::EnvId env;
  std::uint64_t seed;
  std::vector<std::string> script;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {icrl::EnvId::kMaze, 3, {"up", "right", "down", "left", "down", "right", "right", "up", "down"}},
      {icrl::EnvId::kMastermind, 3, {"1 2 3", "4 5 6", "2 4 6"}},
      {icrl::EnvId::kRps, 3, {"rock", "paper", "scissors", "paper", "rock"}},
      {icrl::EnvId::kMinesweeper, 3, {"reveal 0 0", "flag 1 1", "flag 1 1", "reveal 4 4", "reveal 2 2", "reveal 0 4", "reveal 4 0", "reveal 3 1"}},
      {icrl::EnvId::kHangman, 3, {"E", "A", "T", "S", "O", "R", "I", "N", "L", "CAT"}},
      {icrl::EnvId::kWordle, 3, {"CRANE", "SLOTH", "PUDGY", "BLIMP", "FIGHT", "WORDY", "QUAKE", "JUMBO", "VIXEN", "CRANE"}},
      {icrl::EnvId::kBlackjack, 3, {"hit 5", "hit 12", "stand"}},
  };
  return cases;
}

}  // namespace ref
