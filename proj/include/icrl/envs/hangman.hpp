#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

class HangmanEnv final : public Environment {
 public:
  HangmanEnv(std::string word, int horizon);

  EnvId id() const override { return EnvId::kHangman; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<HangmanEnv>(*this); }
  std::string normalize_action(std::string_view action) const override;

  const std::string& word() const { return word_; }
  /// Current grid with '_' for hidden letters.
  std::string pattern() const;
  int attempts_left() const { return horizon() - steps_taken(); }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;
  StepOutcome on_invalid(std::string message) override;

 private:
  std::string grid() const;

  std::string word_;
  std::vector<bool> revealed_;
  std::vector<std::string> guesses_;
};

}  // namespace icrl
