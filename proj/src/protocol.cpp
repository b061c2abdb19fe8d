#include "icrl/protocol.hpp"

#include "icrl/errors.hpp"

namespace icrl {

bool Budget::exceeded(std::span<const ChatMessage> history) const {
  if (max_chars && history_chars(history) > *max_chars) return true;
  if (max_tokens) {
    if (!count_tokens) throw ConfigError("a token budget needs a token counter");
    if (count_tokens(history) > *max_tokens) return true;
  }
  return false;
}

Transcript run_task(const TaskInstance& task, Agent& agent, const Budget& budget) {
  auto env = make_environment(task);
  return run_task(*env, task, agent, budget);
}

Transcript run_task(Environment& env, const TaskInstance& task, Agent& agent, const Budget& budget) {
  validate(task);
  if (env.horizon() != task.horizon) throw InputError("environment horizon differs from the task");
  Transcript transcript;
  transcript.task = task;
  agent.begin_task(task);
  std::vector<ChatMessage> messages = {{Role::kSystem, render_system_prompt()}};

  for (int e = 1; e <= task.episodes; ++e) {
    std::string observation = mark_new_episode(env.reset());
    int length = 0;
    const auto close_episode = [&] {
      if (length > 0) transcript.episode_lengths.push_back(length);
    };
    for (int t = 0; t < task.horizon; ++t) {
      messages.push_back({Role::kUser, observation});
      if ((budget.max_steps && transcript.steps.size() >= *budget.max_steps) ||
          budget.exceeded(messages)) {
        transcript.truncated = true;
        close_episode();
        return transcript;
      }
      std::string raw = agent.act(messages);
      messages.push_back({Role::kAssistant, raw});
      if (budget.exceeded(messages)) {
        transcript.truncated = true;
        close_episode();
        return transcript;
      }

      StepRecord record;
      record.episode_index = e;
      record.step_index = t;
      record.observation = observation;
      record.raw_agent_output = std::move(raw);
      StepOutcome outcome;
      if (auto parsed = parse_action(record.raw_agent_output)) {
        record.action = env.normalize_action(*parsed);
        outcome = env.step(record.action);
      } else {
        outcome = env.reject("No action found. Put your action inside \\boxed{}.");
      }
      record.reward = outcome.reward;
      record.terminal = outcome.terminal;
      record.success = outcome.success;
      record.next_observation = outcome.observation;
      if (!outcome.terminal && t + 1 == task.horizon) {
        record.next_observation += " " + std::string(kStepLimitNotice);
      }
      observation = record.next_observation;
      const bool closes = closes_episode(record, task.horizon);
      transcript.steps.push_back(std::move(record));
      ++length;
      if (closes) {
        messages.push_back({Role::kUser, observation});
        break;
      }
    }
    close_episode();
  }
  return transcript;
}

int trajectory_reward(const Transcript& transcript, bool zero_on_truncation) {
  if (zero_on_truncation && transcript.truncated) return 0;
  int n = 0;
  for (const auto& s : transcript.steps) n += s.success ? 1 : 0;
  return n;
}

std::vector<double> episode_returns(const Transcript& transcript) {
  std::vector<double> out(static_cast<std::size_t>(transcript.task.episodes), 0.0);
  for (const auto& s : transcript.steps) {
    if (s.success && s.episode_index >= 1 && s.episode_index <= transcript.task.episodes) {
      out[s.episode_index - 1] = 1.0;
    }
  }
  return out;
}

double in_context_regret(double j_star, std::span<const double> episode_returns) {
  double sum = 0.0;
  for (double g : episode_returns) sum += g;
  return static_cast<double>(episode_returns.size()) * j_star - sum;
}

}  // namespace icrl
