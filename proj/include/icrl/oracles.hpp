#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "icrl/envs/blackjack.hpp"
#include "icrl/envs/mastermind.hpp"
#include "icrl/envs/maze.hpp"
#include "icrl/task.hpp"

namespace icrl {

// ---------------------------------------------------------------------------
// Maze: finite-horizon value iteration on an accumulated belief map.

enum class CellLabel : std::uint8_t { kUnknown, kWall, kPath };

/// Position and the four neighbor labels read from one maze observation.
struct MazeObservation {
  Cell position;
  std::array<bool, 4> open{};  // indexed like kDirections
};

/// Reads the last "(r,c)" position and "Around you, ..." sentence in `text`.
std::optional<MazeObservation> parse_maze_observation(std::string_view text);

/// What the agent has learned about a maze from every observation so far.
/// Labels only ever go from unknown to wall/path; visited cells are paths.
class BeliefMap {
 public:
  BeliefMap(int rows, int cols);

  /// Every cell labeled from the true layout, goal known. Debug/full-information runs.
  static BeliefMap fully_revealed(const MazeLayout& layout);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Off-board cells are walls.
  CellLabel label(Cell c) const;
  bool visited(Cell c) const;
  Cell position() const { return position_; }
  const std::optional<Cell>& goal() const { return goal_; }

  /// Moves to the observed position, marks it visited and labels its
  /// neighbors. Throws ConsistencyError on a contradiction.
  void update(const MazeObservation& obs);
  void mark_goal(Cell c);

 private:
  void set_label(Cell c, CellLabel l);
  int index(Cell c) const { return c.row * cols_ + c.col; }

  int rows_;
  int cols_;
  std::vector<CellLabel> labels_;
  std::vector<bool> visited_;
  Cell position_;
  std::optional<Cell> goal_;
};

/// Shaped rewards for planning. Unknown cells are assumed open. Until the goal
/// is located, entering a cell never visited (in play or earlier in the plan)
/// pays the discovery bonus; every other open move costs the revisit penalty.
/// Bumping a wall keeps the position.
struct MazeRewards {
  double wall = -100.0;
  double revisit = -0.1;
  double goal = 100.0;
  double discovery = 1.0;
};

struct MazePlan {
  Direction action = Direction::kUp;
  double value = 0.0;
};

/// Memoized finite-horizon backup; ties resolve in up, down, left, right order.
MazePlan maze_oracle_plan(const BeliefMap& belief, int steps_remaining,
                          const MazeRewards& rewards = {});
Direction maze_oracle_action(const BeliefMap& belief, int steps_remaining,
                             const MazeRewards& rewards = {});

// ---------------------------------------------------------------------------
// Mastermind: exact dynamic program over candidate sets.

/// Codes still consistent with every (guess, feedback) pair seen.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<Code> codes);
  /// All 120 duplicate-free codes.
  static CandidateSet uniform();

  const std::vector<Code>& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  bool contains(const Code& c) const;

  CandidateSet filter(const Code& guess, const Pegs& feedback) const;

  /// 128-bit membership key over the duplicate-free code list.
  std::array<std::uint64_t, 2> key() const;

 private:
  std::vector<Code> codes_;
};

struct MastermindPlan {
  Code guess{};
  double success_probability = 0.0;
};

/// value(C, 1) = 1/|C|; value(C, k) = max over guesses of
/// sum over feedback of P(feedback) * (solved ? 1 : value(C filtered, k-1)).
/// Ties go to the lexicographically smallest guess.
class MastermindSolver {
 public:
  explicit MastermindSolver(bool allow_duplicate_guesses = false)
      : guesses_(allow_duplicate_guesses ? &all_codes() : &distinct_codes()) {}

  MastermindPlan best(const CandidateSet& candidates, int turns_remaining);
  double value(const CandidateSet& candidates, int turns_remaining) {
    return best(candidates, turns_remaining).success_probability;
  }

 private:
  const std::vector<Code>* guesses_;
  std::map<std::pair<std::array<std::uint64_t, 2>, int>, MastermindPlan> memo_;
};

Code mastermind_oracle_action(const CandidateSet& candidates, int turns_remaining);

// ---------------------------------------------------------------------------
// Full-information optimal per-episode return under the binary success reward.

/// P(at least k successes in n Bernoulli(p) trials).
double binomial_tail(int n, double p, int k);

/// Majority of H rounds against a known opponent, best-responding each round.
double rps_j_star(const std::array<double, 3>& opponent, int horizon);

/// 1 if some sequence of at most H-1 hits followed by stand beats the dealer.
double blackjack_j_star(const BlackjackDeal& deal, int horizon);

double j_star(const TaskInstance& task);

}  // namespace icrl
