#include "icrl/envs/minesweeper.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>

#include "icrl/errors.hpp"
#include "icrl/prompts.hpp"
#include "icrl/rng.hpp"
#include "icrl/text.hpp"

namespace icrl {
namespace {

constexpr int kMaxGenerationAttempts = 1000;

template <typename F>
void for_each_neighbor(int rows, int cols, int r, int c, F&& f) {
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int nr = r + dr;
      const int nc = c + dc;
      if (nr >= 0 && nc >= 0 && nr < rows && nc < cols) f(nr, nc);
    }
  }
}

std::string cell_text(int r, int c) {
  return "(" + std::to_string(r) + ", " + std::to_string(c) + ")";
}

}  // namespace

MineBoard::MineBoard(int rows, int cols, const std::vector<std::pair<int, int>>& mines)
    : rows_(rows),
      cols_(cols),
      mine_(rows * cols, false),
      revealed_(rows * cols, false),
      flagged_(rows * cols, false),
      counts_(rows * cols, 0) {
  if (rows < 1 || cols < 1) throw InputError("minesweeper board must be non-empty");
  for (const auto& [r, c] : mines) {
    if (!in_bounds(r, c)) throw InputError("mine " + cell_text(r, c) + " is off the board");
    if (mine_[idx(r, c)]) throw InputError("duplicate mine " + cell_text(r, c));
    mine_[idx(r, c)] = true;
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for_each_neighbor(rows, cols, r, c, [&](int nr, int nc) { counts_[idx(r, c)] += mine_[idx(nr, nc)]; });
    }
  }
}

int MineBoard::mine_count() const { return static_cast<int>(std::count(mine_.begin(), mine_.end(), true)); }

MineBoard::Reveal MineBoard::reveal(int r, int c) {
  if (!in_bounds(r, c) || revealed_[idx(r, c)] || flagged_[idx(r, c)]) return Reveal::kInvalid;
  revealed_[idx(r, c)] = true;
  if (mine_[idx(r, c)]) return Reveal::kMine;
  std::deque<std::pair<int, int>> queue;
  if (counts_[idx(r, c)] == 0) queue.emplace_back(r, c);
  while (!queue.empty()) {
    const auto [cr, cc] = queue.front();
    queue.pop_front();
    for_each_neighbor(rows_, cols_, cr, cc, [&](int nr, int nc) {
      const int i = idx(nr, nc);
      if (revealed_[i] || mine_[i]) return;
      revealed_[i] = true;
      flagged_[i] = false;
      if (counts_[i] == 0) queue.emplace_back(nr, nc);
    });
  }
  return Reveal::kSafe;
}

bool MineBoard::toggle_flag(int r, int c) {
  if (!in_bounds(r, c) || revealed_[idx(r, c)]) return false;
  flagged_[idx(r, c)] = !flagged_[idx(r, c)];
  return true;
}

bool MineBoard::cleared() const {
  for (std::size_t i = 0; i < mine_.size(); ++i) {
    if (!mine_[i] && !revealed_[i]) return false;
  }
  return true;
}

void MineBoard::hide_all() {
  std::fill(revealed_.begin(), revealed_.end(), false);
  std::fill(flagged_.begin(), flagged_.end(), false);
}

int MineBoard::min_clicks() const {
  std::vector<bool> covered(mine_.size(), false);
  int clicks = 0;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      const int i = idx(r, c);
      if (mine_[i] || counts_[i] != 0 || covered[i]) continue;
      ++clicks;
      std::deque<std::pair<int, int>> queue = {{r, c}};
      covered[i] = true;
      while (!queue.empty()) {
        const auto [cr, cc] = queue.front();
        queue.pop_front();
        for_each_neighbor(rows_, cols_, cr, cc, [&](int nr, int nc) {
          const int j = idx(nr, nc);
          if (covered[j] || mine_[j]) return;
          covered[j] = true;
          if (counts_[j] == 0) queue.emplace_back(nr, nc);
        });
      }
    }
  }
  for (std::size_t i = 0; i < mine_.size(); ++i) {
    if (!mine_[i] && !covered[i]) ++clicks;
  }
  return clicks;
}

std::string MineBoard::render() const {
  std::string out = "  ";
  char buf[16];
  for (int c = 0; c < cols_; ++c) {
    std::snprintf(buf, sizeof buf, "%3d", c);
    out += buf;
  }
  for (int r = 0; r < rows_; ++r) {
    std::snprintf(buf, sizeof buf, "\n%2d", r);
    out += buf;
    for (int c = 0; c < cols_; ++c) {
      const int i = idx(r, c);
      char ch = '.';
      if (revealed_[i]) {
        ch = mine_[i] ? '*' : static_cast<char>('0' + counts_[i]);
      } else if (flagged_[i]) {
        ch = 'F';
      }
      out += "  ";
      out += ch;
    }
  }
  return out;
}

MineBoard generate_mine_board(std::uint64_t seed, const MinesweeperParams& params, int horizon) {
  const int cells = params.rows * params.cols;
  if (params.rows < 1 || params.cols < 1 || params.mines < 0 || params.mines >= cells) {
    throw GenerationError("minesweeper needs at least one safe cell and a non-negative mine count");
  }
  Rng rng(seed, "minesweeper");
  std::vector<int> order(cells);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    std::vector<std::pair<int, int>> mines;
    for (int k = 0; k < params.mines; ++k) mines.emplace_back(order[k] / params.cols, order[k] % params.cols);
    std::sort(mines.begin(), mines.end());
    MineBoard board(params.rows, params.cols, mines);
    if (board.min_clicks() <= horizon) return board;
  }
  throw GenerationError("no minesweeper board clearable within " + std::to_string(horizon) +
                        " reveals after " + std::to_string(kMaxGenerationAttempts) + " attempts");
}

namespace {

std::string board_block(const MineBoard& board) {
  return "\nHere is the current board layout:\n" + board.render() + "\nEnter your guess.";
}

}  // namespace

std::string MinesweeperEnv::on_reset() {
  board_.hide_all();
  return game_rules(EnvId::kMinesweeper, horizon()) + board_block(board_);
}

StepOutcome MinesweeperEnv::on_step(std::string_view action) {
  const auto parts = tokens(to_lower(action));
  int r = 0;
  int c = 0;
  if (parts.size() != 3 || (parts[0] != "reveal" && parts[0] != "flag") || !parse_int(parts[1], r) ||
      !parse_int(parts[2], c)) {
    return on_invalid("Invalid action '" + std::string(action) +
                      "'. Use 'reveal <row> <col>' or 'flag <row> <col>'.");
  }
  StepOutcome out;
  if (parts[0] == "flag") {
    const bool was_flagged = board_.in_bounds(r, c) && board_.is_flagged(r, c);
    if (!board_.toggle_flag(r, c)) {
      return on_invalid("Cell " + cell_text(r, c) + " is revealed or off the board and cannot be flagged.");
    }
    out.observation = (was_flagged ? "You removed the flag from " : "You placed a flag on ") +
                      cell_text(r, c) + "." + board_block(board_);
    return out;
  }
  switch (board_.reveal(r, c)) {
    case MineBoard::Reveal::kInvalid:
      return on_invalid("Cell " + cell_text(r, c) + " is already revealed, flagged, or off the board.");
    case MineBoard::Reveal::kMine:
      out.observation = "Boom! You revealed a mine at " + cell_text(r, c) + ". Game over.\n" +
                        board_.render();
      out.reward = -1.0;
      out.terminal = true;
      return out;
    case MineBoard::Reveal::kSafe:
      break;
  }
  if (board_.cleared()) {
    out.observation = "You revealed cell " + cell_text(r, c) + ". All safe cells are revealed. You win!\n" +
                      board_.render();
    out.reward = 1.0;
    out.terminal = true;
    out.success = true;
    return out;
  }
  out.observation = "You revealed cell " + cell_text(r, c) + "." + board_block(board_);
  return out;
}

StepOutcome MinesweeperEnv::on_invalid(std::string message) {
  return invalid(std::move(message) + board_block(board_));
}

}  // namespace icrl
