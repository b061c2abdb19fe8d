#include "icrl/envs/hangman.hpp"

#include <algorithm>
#include <cstdio>

#include "icrl/prompts.hpp"
#include "icrl/text.hpp"

namespace icrl {

HangmanEnv::HangmanEnv(std::string word, int horizon)
    : Environment(horizon), word_(std::move(word)), revealed_(word_.size(), false) {}

std::string HangmanEnv::normalize_action(std::string_view action) const {
  return to_upper(trim(action));
}

std::string HangmanEnv::pattern() const {
  std::string out;
  for (std::size_t i = 0; i < word_.size(); ++i) out += revealed_[i] ? word_[i] : '_';
  return out;
}

std::string HangmanEnv::grid() const {
  std::string header;
  std::string row;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    char label[8];
    std::snprintf(label, sizeof label, "C%02zu", i);
    if (i) header += ' ';
    header += label;
    row += ' ';
    row += revealed_[i] ? word_[i] : '_';
    row += "  ";
  }
  while (!row.empty() && row.back() == ' ') row.pop_back();
  return header + "\n" + row;
}

std::string HangmanEnv::on_reset() {
  std::fill(revealed_.begin(), revealed_.end(), false);
  guesses_.clear();
  return game_rules(EnvId::kHangman, horizon()) +
         "\nHere is the current state of the Hangman grid:\n" + grid() + "\nEnter your guess.";
}

StepOutcome HangmanEnv::on_step(std::string_view action) {
  const std::string guess = to_upper(trim(action));
  const bool alpha = !guess.empty() && std::all_of(guess.begin(), guess.end(), [](char c) {
    return c >= 'A' && c <= 'Z';
  });
  if (!alpha || (guess.size() != 1 && guess.size() != word_.size())) {
    return on_invalid("Invalid guess '" + std::string(action) + "'. Guess a single letter or the whole " +
                      std::to_string(word_.size()) + "-letter word.");
  }
  StepOutcome out;
  const bool repeat = std::find(guesses_.begin(), guesses_.end(), guess) != guesses_.end();
  guesses_.push_back(guess);
  if (guess.size() == 1) {
    bool hit = false;
    for (std::size_t i = 0; i < word_.size(); ++i) {
      if (word_[i] == guess[0]) {
        revealed_[i] = true;
        hit = true;
      }
    }
    if (repeat) {
      out.observation = "You already guessed " + guess + ".";
    } else {
      out.observation = "The letter " + guess + (hit ? " is in the word." : " is not in the word.");
    }
    if (std::all_of(revealed_.begin(), revealed_.end(), [](bool b) { return b; })) {
      out.observation += " You revealed the word " + word_ + ". You win!";
      out.reward = 1.0;
      out.terminal = true;
      out.success = true;
      return out;
    }
  } else if (guess == word_) {
    std::fill(revealed_.begin(), revealed_.end(), true);
    out.observation = "You guessed the word " + word_ + ". You win!";
    out.reward = 1.0;
    out.terminal = true;
    out.success = true;
    return out;
  } else {
    out.observation = guess + " is not the word.";
  }
  out.observation += "\nHere is the current state of the Hangman grid:\n" + grid() +
                     "\nYour guesses so far: " + join(guesses_, ", ") +
                     "\nAttempts left: " + std::to_string(attempts_left()) + "\nEnter your guess.";
  return out;
}

StepOutcome HangmanEnv::on_invalid(std::string message) {
  return invalid(std::move(message) + "\nHere is the current state of the Hangman grid:\n" + grid() +
                 "\nAttempts left: " + std::to_string(attempts_left()) + "\nEnter your guess.");
}

}  // namespace icrl
