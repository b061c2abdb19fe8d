#include "icrl/envs/bandit.hpp"

#include "icrl/prompts.hpp"
#include "icrl/text.hpp"

namespace icrl {

std::string TwoArmedBanditEnv::on_reset() { return game_rules(EnvId::kTwoArmedBandit, horizon()); }

StepOutcome TwoArmedBanditEnv::on_step(std::string_view action) {
  const auto parts = tokens(action);
  int arm = -1;
  StepOutcome out;
  out.terminal = true;
  if (parts.empty() || !parse_int(parts.back(), arm) || (arm != 0 && arm != 1)) {
    out.valid = false;
    out.observation = "Invalid arm. Nothing happened.";
    return out;
  }
  out.success = arm == good_arm_;
  out.reward = out.success ? 1.0 : 0.0;
  out.observation = "You pulled arm " + std::to_string(arm) + (out.success ? ". It paid out." : ". Nothing.");
  return out;
}

}  // namespace icrl
