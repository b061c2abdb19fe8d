#pragma once

#include <string>
#include <vector>

namespace icrl {

/// Bundled five-letter Wordle secrets (data/wordle_words.txt), uppercase.
const std::vector<std::string>& wordle_words();
/// Bundled three-letter Hangman secrets (data/hangman_words.txt), uppercase.
const std::vector<std::string>& hangman_words();

}  // namespace icrl
