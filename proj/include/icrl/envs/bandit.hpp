#pragma once

#include "icrl/environment.hpp"

namespace icrl {

/// Two arms, one of which succeeds. The good arm is the task identity and
/// stays fixed across episodes; one pull per episode.
class TwoArmedBanditEnv final : public Environment {
 public:
  TwoArmedBanditEnv(int good_arm, int horizon) : Environment(horizon), good_arm_(good_arm) {}

  EnvId id() const override { return EnvId::kTwoArmedBandit; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<TwoArmedBanditEnv>(*this);
  }

  int good_arm() const { return good_arm_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;

 private:
  int good_arm_;
};

}  // namespace icrl
