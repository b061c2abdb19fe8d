#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icrl/environment.hpp"
#include "icrl/prompts.hpp"
#include "icrl/task.hpp"

namespace icrl {

/// Anything that maps the cross-episode chat history to one raw reply.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual void begin_task(const TaskInstance& /*task*/) {}
  virtual std::string act(std::span<const ChatMessage> history) = 0;
};

/// Context budget. Exceeding any cap stops the run and marks it truncated.
struct Budget {
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> max_chars;
  std::optional<std::size_t> max_tokens;
  // Required when max_tokens is set.
  std::function<std::size_t(std::span<const ChatMessage>)> count_tokens;

  bool exceeded(std::span<const ChatMessage> history) const;
};

/// Runs T episodes of up to H steps each against one environment, keeping the
/// full history in the agent's context. Agent exceptions propagate.
Transcript run_task(const TaskInstance& task, Agent& agent, const Budget& budget = {});
Transcript run_task(Environment& env, const TaskInstance& task, Agent& agent,
                    const Budget& budget = {});

/// Number of successful episodes. With zero_on_truncation, a truncated run scores 0.
int trajectory_reward(const Transcript& transcript, bool zero_on_truncation = false);

/// Binary return per episode (1 if it ended in success), length T.
std::vector<double> episode_returns(const Transcript& transcript);

/// T * j_star minus the summed episode returns of one trace.
double in_context_regret(double j_star, std::span<const double> episode_returns);

}  // namespace icrl
