#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

inline constexpr int kCodeLength = 3;
inline constexpr int kCodeDigits = 6;

using Code = std::array<int, kCodeLength>;

struct Pegs {
  int black = 0;
  int white = 0;
  bool operator==(const Pegs&) const = default;
  bool solved() const { return black == kCodeLength; }
};

/// Black = positional matches; white = multiset intersection minus black.
/// Throws InputError for digits outside 1..6.
Pegs mastermind_feedback(const Code& secret, const Code& guess);

/// Accepts "1 4 6", "146" and "1,4,6". Digits must be in 1..6.
std::optional<Code> parse_code(std::string_view text);
std::string format_code(const Code& code);

/// The 120 duplicate-free codes in lexicographic order.
const std::vector<Code>& distinct_codes();
/// All 216 codes, duplicates allowed, lexicographic.
const std::vector<Code>& all_codes();

class MastermindEnv final : public Environment {
 public:
  MastermindEnv(Code secret, int horizon) : Environment(horizon), secret_(secret) {}

  EnvId id() const override { return EnvId::kMastermind; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<MastermindEnv>(*this);
  }
  std::string normalize_action(std::string_view action) const override;

  const Code& secret() const { return secret_; }
  const std::vector<std::pair<Code, Pegs>>& history() const { return history_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;

 private:
  Code secret_;
  std::vector<std::pair<Code, Pegs>> history_;
};

Code generate_mastermind_secret(std::uint64_t seed);

}  // namespace icrl
