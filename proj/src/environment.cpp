#include "icrl/environment.hpp"

#include <cmath>

#include "icrl/envs/bandit.hpp"
#include "icrl/envs/blackjack.hpp"
#include "icrl/envs/hangman.hpp"
#include "icrl/envs/mastermind.hpp"
#include "icrl/envs/maze.hpp"
#include "icrl/envs/minesweeper.hpp"
#include "icrl/envs/rps.hpp"
#include "icrl/envs/wordle.hpp"
#include "icrl/errors.hpp"
#include "icrl/rng.hpp"
#include "icrl/text.hpp"
#include "icrl/word_lists.hpp"

namespace icrl {

std::string Environment::reset() {
  ++episode_;
  steps_taken_ = 0;
  return on_reset();
}

StepOutcome Environment::step(std::string_view action) {
  ++steps_taken_;
  return on_step(action);
}

StepOutcome Environment::reject(std::string_view reason) {
  ++steps_taken_;
  return on_invalid(std::string(reason));
}

std::string Environment::normalize_action(std::string_view action) const {
  return canonical_lower(action);
}

StepOutcome Environment::on_invalid(std::string message) { return invalid(std::move(message)); }

namespace {

std::string pick_word(const std::string& fixed, const std::vector<std::string>& list,
                      std::size_t length, std::uint64_t seed, std::string_view stream) {
  std::string word = fixed.empty() ? list[Rng(seed, stream).below(list.size())] : to_upper(fixed);
  if (word.size() != length) {
    throw InputError("secret word '" + word + "' must have " + std::to_string(length) + " letters");
  }
  for (char c : word) {
    if (c < 'A' || c > 'Z') throw InputError("secret word '" + word + "' must be alphabetic");
  }
  return word;
}

std::array<double, 3> checked_distribution(const std::array<double, 3>& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("opponent probabilities must be >= 0");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("opponent probabilities must sum to 1");
  return p;
}

}  // namespace

std::unique_ptr<Environment> make_environment(const TaskInstance& task) {
  validate(task);
  const int h = task.horizon;
  switch (task.env_id) {
    case EnvId::kMaze: {
      const auto& p = std::get<MazeParams>(task.params);
      auto layout = p.layout.empty() ? generate_maze(task.seed, p, h) : parse_maze_layout(p.layout);
      return std::make_unique<MazeEnv>(std::move(layout), h);
    }
    case EnvId::kMastermind:
      return std::make_unique<MastermindEnv>(generate_mastermind_secret(task.seed), h);
    case EnvId::kRps: {
      const auto& p = std::get<RpsParams>(task.params);
      auto dist = p.opponent ? checked_distribution(*p.opponent) : sample_rps_opponent(task.seed);
      return std::make_unique<RpsEnv>(dist, task.seed, h);
    }
    case EnvId::kMinesweeper: {
      const auto& p = std::get<MinesweeperParams>(task.params);
      MineBoard board = p.mine_cells.empty() ? generate_mine_board(task.seed, p, h)
                                             : MineBoard(p.rows, p.cols, p.mine_cells);
      return std::make_unique<MinesweeperEnv>(std::move(board), h);
    }
    case EnvId::kHangman: {
      const auto& p = std::get<HangmanParams>(task.params);
      return std::make_unique<HangmanEnv>(pick_word(p.word, hangman_words(), 3, task.seed, "hangman"),
                                          h);
    }
    case EnvId::kWordle: {
      const auto& p = std::get<WordleParams>(task.params);
      return std::make_unique<WordleEnv>(pick_word(p.word, wordle_words(), 5, task.seed, "wordle"), h);
    }
    case EnvId::kBlackjack:
      return std::make_unique<BlackjackEnv>(deal_blackjack(task.seed), h);
    case EnvId::kTwoArmedBandit: {
      const auto& p = std::get<BanditParams>(task.params);
      const int arm = p.good_arm ? *p.good_arm : static_cast<int>(Rng(task.seed, "bandit").below(2));
      if (arm != 0 && arm != 1) throw InputError("good_arm must be 0 or 1");
      return std::make_unique<TwoArmedBanditEnv>(arm, h);
    }
  }
  throw InputError("unknown environment id");
}

}  // namespace icrl
