#include "icrl/envs/mastermind.hpp"

#include <algorithm>
#include <numeric>

#include "icrl/errors.hpp"
#include "icrl/prompts.hpp"
#include "icrl/rng.hpp"
#include "icrl/text.hpp"

namespace icrl {
namespace {

std::vector<Code> enumerate_codes(bool distinct) {
  std::vector<Code> out;
  for (int a = 1; a <= kCodeDigits; ++a) {
    for (int b = 1; b <= kCodeDigits; ++b) {
      for (int c = 1; c <= kCodeDigits; ++c) {
        if (distinct && (a == b || a == c || b == c)) continue;
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

std::string turns_left(int n) {
  return "You have " + std::to_string(n) + (n == 1 ? " turn" : " turns") + " left.";
}

}  // namespace

Pegs mastermind_feedback(const Code& secret, const Code& guess) {
  std::array<int, kCodeDigits + 1> secret_count{};
  std::array<int, kCodeDigits + 1> guess_count{};
  Pegs pegs;
  for (int i = 0; i < kCodeLength; ++i) {
    if (secret[i] < 1 || secret[i] > kCodeDigits || guess[i] < 1 || guess[i] > kCodeDigits) {
      throw InputError("mastermind digits must be in 1..6");
    }
    if (secret[i] == guess[i]) ++pegs.black;
    ++secret_count[secret[i]];
    ++guess_count[guess[i]];
  }
  int common = 0;
  for (int d = 1; d <= kCodeDigits; ++d) common += std::min(secret_count[d], guess_count[d]);
  pegs.white = common - pegs.black;
  return pegs;
}

std::optional<Code> parse_code(std::string_view text) {
  std::vector<std::string> parts = tokens(text);
  if (parts.size() == 1 && parts[0].size() == kCodeLength) {
    parts = {parts[0].substr(0, 1), parts[0].substr(1, 1), parts[0].substr(2, 1)};
  }
  if (parts.size() != kCodeLength) return std::nullopt;
  Code code{};
  for (int i = 0; i < kCodeLength; ++i) {
    int d = 0;
    if (!parse_int(parts[i], d) || d < 1 || d > kCodeDigits) return std::nullopt;
    code[i] = d;
  }
  return code;
}

std::string format_code(const Code& code) {
  std::string out;
  for (int i = 0; i < kCodeLength; ++i) {
    if (i) out += ' ';
    out += std::to_string(code[i]);
  }
  return out;
}

const std::vector<Code>& distinct_codes() {
  static const std::vector<Code> codes = enumerate_codes(true);
  return codes;
}

const std::vector<Code>& all_codes() {
  static const std::vector<Code> codes = enumerate_codes(false);
  return codes;
}

Code generate_mastermind_secret(std::uint64_t seed) {
  std::array<int, kCodeDigits> digits{};
  std::iota(digits.begin(), digits.end(), 1);
  Rng rng(seed, "mastermind");
  rng.shuffle(std::span<int>(digits));
  return {digits[0], digits[1], digits[2]};
}

std::string MastermindEnv::normalize_action(std::string_view action) const {
  if (auto code = parse_code(action)) return format_code(*code);
  return canonical_lower(action);
}

std::string MastermindEnv::on_reset() {
  history_.clear();
  return game_rules(EnvId::kMastermind, horizon());
}

StepOutcome MastermindEnv::on_step(std::string_view action) {
  const auto guess = parse_code(action);
  if (!guess) {
    return on_invalid("Invalid guess '" + std::string(action) +
                      "'. Enter three digits from 1 to 6, for example \\box{1 4 6}. " +
                      turns_left(horizon() - steps_taken()));
  }
  const Pegs pegs = mastermind_feedback(secret_, *guess);
  history_.emplace_back(*guess, pegs);
  StepOutcome out;
  out.observation = "Guess " + std::to_string(history_.size()) + ": " + format_code(*guess) +
                    " -> " + std::to_string(pegs.black) + " black, " + std::to_string(pegs.white) +
                    " white.";
  if (pegs.solved()) {
    out.observation += " You cracked the code!";
    out.reward = 1.0;
    out.terminal = true;
    out.success = true;
    return out;
  }
  out.observation += "\nHistory of your guesses:";
  for (std::size_t i = 0; i < history_.size(); ++i) {
    const auto& [g, p] = history_[i];
    out.observation += "\n" + std::to_string(i + 1) + ". " + format_code(g) + " -> " +
                       std::to_string(p.black) + " black, " + std::to_string(p.white) + " white";
  }
  out.observation += "\n" + turns_left(horizon() - steps_taken());
  return out;
}

}  // namespace icrl
