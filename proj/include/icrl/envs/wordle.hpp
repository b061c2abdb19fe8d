#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

/// Two-pass marking: G for exact matches first, then Y while unmatched
/// copies of the letter remain in the secret, X otherwise. Returns 5 marks.
std::string wordle_feedback(std::string_view secret, std::string_view guess);

class WordleEnv final : public Environment {
 public:
  WordleEnv(std::string secret, int horizon) : Environment(horizon), secret_(std::move(secret)) {}

  EnvId id() const override { return EnvId::kWordle; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<WordleEnv>(*this); }
  std::string normalize_action(std::string_view action) const override;

  const std::string& secret() const { return secret_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;

 private:
  std::string secret_;
  std::vector<std::pair<std::string, std::string>> history_;
};

}  // namespace icrl
