#pragma once

#include <string>
#include <utility>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

class MineBoard {
 public:
  enum class Reveal { kSafe, kMine, kInvalid };

  MineBoard() = default;
  MineBoard(int rows, int cols, const std::vector<std::pair<int, int>>& mines);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool in_bounds(int r, int c) const { return r >= 0 && c >= 0 && r < rows_ && c < cols_; }
  bool is_mine(int r, int c) const { return mine_[idx(r, c)]; }
  bool is_revealed(int r, int c) const { return revealed_[idx(r, c)]; }
  bool is_flagged(int r, int c) const { return flagged_[idx(r, c)]; }
  int adjacent_mines(int r, int c) const { return counts_[idx(r, c)]; }
  int mine_count() const;

  /// Reveals a hidden, unflagged cell. A zero count floods its 8-neighborhood
  /// breadth-first; flags met by the flood are cleared.
  Reveal reveal(int r, int c);
  /// Places or removes a flag on a hidden cell. False if the cell is revealed or off-board.
  bool toggle_flag(int r, int c);
  bool cleared() const;
  void hide_all();

  /// Minimum number of reveals that clear the board: one per zero region
  /// plus every numbered cell not bordering a zero.
  int min_clicks() const;

  /// Dots for hidden cells, F for flags, digits for revealed counts.
  std::string render() const;

 private:
  int idx(int r, int c) const { return r * cols_ + c; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<bool> mine_;
  std::vector<bool> revealed_;
  std::vector<bool> flagged_;
  std::vector<int> counts_;
};

class MinesweeperEnv final : public Environment {
 public:
  MinesweeperEnv(MineBoard board, int horizon) : Environment(horizon), board_(std::move(board)) {}

  EnvId id() const override { return EnvId::kMinesweeper; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<MinesweeperEnv>(*this);
  }

  const MineBoard& board() const { return board_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;
  StepOutcome on_invalid(std::string message) override;

 private:
  MineBoard board_;
};

/// Random placement rejected until the board is clearable within `horizon` reveals.
MineBoard generate_mine_board(std::uint64_t seed, const MinesweeperParams& params, int horizon);

}  // namespace icrl
