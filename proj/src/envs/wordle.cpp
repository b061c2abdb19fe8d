#include "icrl/envs/wordle.hpp"

#include <array>

#include "icrl/errors.hpp"
#include "icrl/prompts.hpp"
#include "icrl/text.hpp"

namespace icrl {

std::string wordle_feedback(std::string_view secret, std::string_view guess) {
  if (secret.size() != 5 || guess.size() != 5) {
    throw InputError("wordle words must have 5 letters");
  }
  std::string marks(5, 'X');
  std::array<int, 256> remaining{};
  for (int i = 0; i < 5; ++i) {
    if (guess[i] == secret[i]) {
      marks[i] = 'G';
    } else {
      ++remaining[static_cast<unsigned char>(secret[i])];
    }
  }
  for (int i = 0; i < 5; ++i) {
    if (marks[i] == 'G') continue;
    int& left = remaining[static_cast<unsigned char>(guess[i])];
    if (left > 0) {
      marks[i] = 'Y';
      --left;
    }
  }
  return marks;
}

std::string WordleEnv::normalize_action(std::string_view action) const {
  return to_upper(trim(action));
}

std::string WordleEnv::on_reset() {
  history_.clear();
  return game_rules(EnvId::kWordle, horizon());
}

namespace {

std::string spaced(const std::string& marks) {
  std::string out;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (i) out += ' ';
    out += marks[i];
  }
  return out;
}

}  // namespace

StepOutcome WordleEnv::on_step(std::string_view action) {
  const std::string guess = to_upper(trim(action));
  const int left = horizon() - steps_taken();
  bool ok = guess.size() == 5;
  for (char c : guess) ok = ok && c >= 'A' && c <= 'Z';
  if (!ok) {
    return on_invalid("Invalid guess '" + std::string(action) + "'. Enter a 5-letter word. You have " +
                      std::to_string(left) + " turns left.");
  }
  const std::string marks = wordle_feedback(secret_, guess);
  history_.emplace_back(guess, marks);
  StepOutcome out;
  out.observation = "Guess " + std::to_string(history_.size()) + ": " + guess + " -> " + spaced(marks);
  if (guess == secret_) {
    out.observation += ". You guessed the word!";
    out.reward = 1.0;
    out.terminal = true;
    out.success = true;
    return out;
  }
  out.observation += "\nHistory of your guesses:";
  for (std::size_t i = 0; i < history_.size(); ++i) {
    out.observation +=
        "\n" + std::to_string(i + 1) + ". " + history_[i].first + " -> " + spaced(history_[i].second);
  }
  out.observation += "\nYou have " + std::to_string(left) + (left == 1 ? " turn" : " turns") + " left.";
  return out;
}

}  // namespace icrl
