#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

enum class Direction { kUp, kDown, kLeft, kRight };

/// Fixed order used for rendering and for deterministic tie-breaking.
inline constexpr std::array<Direction, 4> kDirections = {Direction::kUp, Direction::kDown,
                                                         Direction::kLeft, Direction::kRight};

std::string_view to_string(Direction d);
std::optional<Direction> direction_from_string(std::string_view s);

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

Cell neighbor(Cell c, Direction d);

class MazeGrid {
 public:
  MazeGrid() = default;
  MazeGrid(int rows, int cols) : rows_(rows), cols_(cols), open_(rows * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool in_bounds(Cell c) const { return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_; }
  /// Out-of-bounds cells are walls.
  bool is_path(Cell c) const { return in_bounds(c) && open_[index(c)] != 0; }
  void set_path(Cell c, bool open) { open_[index(c)] = open ? 1 : 0; }
  int index(Cell c) const { return c.row * cols_ + c.col; }
  Cell cell(int index) const { return {index / cols_, index % cols_}; }

  /// BFS step counts from `from`; -1 for unreachable cells and walls.
  std::vector<int> distances_from(Cell from) const;
  int shortest_path(Cell from, Cell to) const;

  bool operator==(const MazeGrid&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<char> open_;
};

struct MazeLayout {
  MazeGrid grid;
  Cell start;
  Cell goal;
  bool operator==(const MazeLayout&) const = default;
};

/// Randomized depth-first carving, rejection-sampled until the start/goal
/// shortest path lies in [path_min, path_max].
MazeLayout generate_maze(std::uint64_t seed, const MazeParams& params, int horizon);

/// Parses the '#', '.', 'S', 'G' layout format of MazeParams.
MazeLayout parse_maze_layout(const std::vector<std::string>& rows);

/// "Around you, up leads to path, down leads to wall, left leads to wall,
/// and right leads to wall." The goal is reported as an ordinary path.
std::string maze_observe(const MazeGrid& grid, Cell position);

std::string format_cell(Cell c);

class MazeEnv final : public Environment {
 public:
  MazeEnv(MazeLayout layout, int horizon) : Environment(horizon), layout_(std::move(layout)) {}

  EnvId id() const override { return EnvId::kMaze; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<MazeEnv>(*this); }

  const MazeLayout& layout() const { return layout_; }
  Cell position() const { return position_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;
  StepOutcome on_invalid(std::string message) override;

 private:
  std::string status() const;

  MazeLayout layout_;
  Cell position_;
};

}  // namespace icrl
