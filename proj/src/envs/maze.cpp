#include "icrl/envs/maze.hpp"

#include <deque>

#include "icrl/errors.hpp"
#include "icrl/prompts.hpp"
#include "icrl/rng.hpp"
#include "icrl/text.hpp"

namespace icrl {
namespace {

constexpr int kMaxGenerationAttempts = 1000;
constexpr std::string_view kAskMove =
    "Output your next move from up/down/left/right within \\boxed{}.";

void carve(MazeGrid& grid, Rng& rng) {
  std::vector<Cell> rooms;
  for (int r = 1; r < grid.rows() - 1; r += 2) {
    for (int c = 1; c < grid.cols() - 1; c += 2) rooms.push_back({r, c});
  }
  std::vector<Cell> stack = {rooms[rng.below(rooms.size())]};
  grid.set_path(stack.back(), true);
  while (!stack.empty()) {
    const Cell cur = stack.back();
    std::vector<Direction> open;
    for (Direction d : kDirections) {
      const Cell mid = neighbor(cur, d);
      const Cell next = neighbor(mid, d);
      if (next.row >= 1 && next.col >= 1 && next.row < grid.rows() - 1 &&
          next.col < grid.cols() - 1 && !grid.is_path(next)) {
        open.push_back(d);
      }
    }
    if (open.empty()) {
      stack.pop_back();
      continue;
    }
    const Direction d = open[rng.below(open.size())];
    const Cell mid = neighbor(cur, d);
    grid.set_path(mid, true);
    grid.set_path(neighbor(mid, d), true);
    stack.push_back(neighbor(mid, d));
  }
}

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kUp: return "up";
    case Direction::kDown: return "down";
    case Direction::kLeft: return "left";
    case Direction::kRight: return "right";
  }
  return "up";
}

std::optional<Direction> direction_from_string(std::string_view s) {
  const std::string lower = canonical_lower(s);
  for (Direction d : kDirections) {
    if (lower == to_string(d)) return d;
  }
  return std::nullopt;
}

Cell neighbor(Cell c, Direction d) {
  switch (d) {
    case Direction::kUp: return {c.row - 1, c.col};
    case Direction::kDown: return {c.row + 1, c.col};
    case Direction::kLeft: return {c.row, c.col - 1};
    case Direction::kRight: return {c.row, c.col + 1};
  }
  return c;
}

std::vector<int> MazeGrid::distances_from(Cell from) const {
  std::vector<int> dist(open_.size(), -1);
  if (!is_path(from)) return dist;
  std::deque<Cell> queue = {from};
  dist[index(from)] = 0;
  while (!queue.empty()) {
    const Cell cur = queue.front();
    queue.pop_front();
    for (Direction d : kDirections) {
      const Cell next = neighbor(cur, d);
      if (is_path(next) && dist[index(next)] < 0) {
        dist[index(next)] = dist[index(cur)] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

int MazeGrid::shortest_path(Cell from, Cell to) const {
  if (!in_bounds(to)) return -1;
  return distances_from(from)[index(to)];
}

MazeLayout generate_maze(std::uint64_t seed, const MazeParams& params, int horizon) {
  if (params.rows < 3 || params.cols < 3) throw GenerationError("maze must be at least 3x3");
  if (params.path_min < 1 || params.path_min > params.path_max) {
    throw GenerationError("maze path range is empty");
  }
  if (params.path_max > horizon) {
    throw GenerationError("maze path range exceeds the horizon");
  }
  Rng rng(seed, "maze");
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    MazeGrid grid(params.rows, params.cols);
    carve(grid, rng);
    std::vector<Cell> paths;
    for (int i = 0; i < params.rows * params.cols; ++i) {
      if (grid.is_path(grid.cell(i))) paths.push_back(grid.cell(i));
    }
    const Cell start = paths[rng.below(paths.size())];
    const auto dist = grid.distances_from(start);
    std::vector<Cell> goals;
    for (const Cell& c : paths) {
      const int d = dist[grid.index(c)];
      if (d >= params.path_min && d <= params.path_max) goals.push_back(c);
    }
    if (goals.empty()) continue;
    return {std::move(grid), start, goals[rng.below(goals.size())]};
  }
  throw GenerationError("no maze with shortest path in [" + std::to_string(params.path_min) + ", " +
                        std::to_string(params.path_max) + "] after " +
                        std::to_string(kMaxGenerationAttempts) + " attempts");
}

MazeLayout parse_maze_layout(const std::vector<std::string>& rows) {
  if (rows.empty() || rows.front().empty()) throw InputError("empty maze layout");
  const int n_rows = static_cast<int>(rows.size());
  const int n_cols = static_cast<int>(rows.front().size());
  MazeLayout layout{MazeGrid(n_rows, n_cols), {-1, -1}, {-1, -1}};
  for (int r = 0; r < n_rows; ++r) {
    if (static_cast<int>(rows[r].size()) != n_cols) throw InputError("ragged maze layout");
    for (int c = 0; c < n_cols; ++c) {
      const char ch = rows[r][c];
      if (ch == '#') continue;
      if (ch != '.' && ch != 'S' && ch != 'G') {
        throw InputError(std::string("bad maze layout character '") + ch + "'");
      }
      layout.grid.set_path({r, c}, true);
      if (ch == 'S') layout.start = {r, c};
      if (ch == 'G') layout.goal = {r, c};
    }
  }
  if (layout.start.row < 0 || layout.goal.row < 0) throw InputError("layout needs S and G");
  if (layout.grid.shortest_path(layout.start, layout.goal) < 0) {
    throw GenerationError("goal unreachable in fixed layout");
  }
  return layout;
}

std::string format_cell(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string maze_observe(const MazeGrid& grid, Cell position) {
  std::string out = "Around you, ";
  for (std::size_t i = 0; i < kDirections.size(); ++i) {
    const Direction d = kDirections[i];
    if (i + 1 == kDirections.size()) out += "and ";
    out += std::string(to_string(d)) + " leads to " +
           (grid.is_path(neighbor(position, d)) ? "path" : "wall");
    out += (i + 1 == kDirections.size()) ? "." : ", ";
  }
  return out;
}

std::string MazeEnv::status() const {
  return "You are at " + format_cell(position_) + ". " + maze_observe(layout_.grid, position_) + " " +
         std::string(kAskMove);
}

std::string MazeEnv::on_reset() {
  position_ = layout_.start;
  return game_rules(EnvId::kMaze, horizon()) + " You are at the START position " +
         format_cell(position_) + ". " + maze_observe(layout_.grid, position_) + " " +
         std::string(kAskMove);
}

StepOutcome MazeEnv::on_step(std::string_view action) {
  const auto dir = direction_from_string(action);
  if (!dir) {
    return on_invalid("Invalid action '" + std::string(action) +
                      "'. Valid moves are up, down, left and right.");
  }
  const Cell next = neighbor(position_, *dir);
  StepOutcome out;
  if (!layout_.grid.is_path(next)) {
    out.observation = "You hit a wall moving " + std::string(to_string(*dir)) + ". " + status();
    return out;
  }
  position_ = next;
  if (position_ == layout_.goal) {
    out.observation = "Congratulations! You arrived at the goal.";
    out.reward = 1.0;
    out.terminal = true;
    out.success = true;
    return out;
  }
  out.observation = "You moved " + std::string(to_string(*dir)) + ". " + status();
  return out;
}

StepOutcome MazeEnv::on_invalid(std::string message) {
  return invalid(std::move(message) + " " + status());
}

}  // namespace icrl
