#include "icrl/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <string>
#include <unordered_map>

#include "icrl/envs/minesweeper.hpp"
#include "icrl/envs/rps.hpp"
#include "icrl/errors.hpp"

namespace icrl {

// ---------------------------------------------------------------------------
// Maze

std::optional<MazeObservation> parse_maze_observation(std::string_view text) {
  static const std::regex around(
      R"(Around you, up leads to (path|wall), down leads to (path|wall), left leads to (path|wall), and right leads to (path|wall)\.)");
  static const std::regex cell(R"(\((\d+),(\d+)\))");
  const std::string s(text);
  std::optional<std::smatch> last_around;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), around); it != std::sregex_iterator(); ++it) {
    last_around = *it;
  }
  if (!last_around) return std::nullopt;
  const std::string before = s.substr(0, static_cast<std::size_t>(last_around->position(0)));
  std::optional<std::smatch> last_cell;
  for (auto it = std::sregex_iterator(before.begin(), before.end(), cell); it != std::sregex_iterator();
       ++it) {
    last_cell = *it;
  }
  if (!last_cell) return std::nullopt;
  MazeObservation obs;
  obs.position = {std::stoi((*last_cell)[1]), std::stoi((*last_cell)[2])};
  for (int i = 0; i < 4; ++i) obs.open[i] = (*last_around)[i + 1] == "path";
  return obs;
}

BeliefMap::BeliefMap(int rows, int cols)
    : rows_(rows), cols_(cols), labels_(rows * cols, CellLabel::kUnknown), visited_(rows * cols, false) {
  if (rows < 1 || cols < 1) throw InputError("belief map must be non-empty");
}

BeliefMap BeliefMap::fully_revealed(const MazeLayout& layout) {
  BeliefMap b(layout.grid.rows(), layout.grid.cols());
  for (int r = 0; r < b.rows_; ++r) {
    for (int c = 0; c < b.cols_; ++c) {
      b.labels_[b.index({r, c})] = layout.grid.is_path({r, c}) ? CellLabel::kPath : CellLabel::kWall;
    }
  }
  b.position_ = layout.start;
  b.visited_[b.index(layout.start)] = true;
  b.goal_ = layout.goal;
  return b;
}

CellLabel BeliefMap::label(Cell c) const {
  if (c.row < 0 || c.col < 0 || c.row >= rows_ || c.col >= cols_) return CellLabel::kWall;
  return labels_[index(c)];
}

bool BeliefMap::visited(Cell c) const {
  if (c.row < 0 || c.col < 0 || c.row >= rows_ || c.col >= cols_) return false;
  return visited_[index(c)];
}

void BeliefMap::set_label(Cell c, CellLabel l) {
  const bool on_board = c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  if (!on_board) {
    if (l == CellLabel::kPath) throw ConsistencyError("observation opens an off-board cell " + format_cell(c));
    return;
  }
  CellLabel& cur = labels_[index(c)];
  if (cur != CellLabel::kUnknown && cur != l) {
    throw ConsistencyError("cell " + format_cell(c) + " observed as both path and wall");
  }
  cur = l;
}

void BeliefMap::update(const MazeObservation& obs) {
  set_label(obs.position, CellLabel::kPath);
  position_ = obs.position;
  visited_[index(obs.position)] = true;
  for (std::size_t i = 0; i < kDirections.size(); ++i) {
    set_label(neighbor(obs.position, kDirections[i]), obs.open[i] ? CellLabel::kPath : CellLabel::kWall);
  }
}

void BeliefMap::mark_goal(Cell c) {
  set_label(c, CellLabel::kPath);
  goal_ = c;
}

namespace {

class MazePlanner {
 public:
  MazePlanner(const BeliefMap& belief, const MazeRewards& rewards)
      : belief_(belief), rewards_(rewards), entered_(belief.rows() * belief.cols(), false) {}

  MazePlan plan(Cell from, int k) {
    MazePlan best;
    bool have = false;
    for (Direction d : kDirections) {
      const double v = q_value(from, d, k);
      if (!have || v > best.value + kTieTolerance) {
        best = {d, v};
        have = true;
      }
    }
    return best;
  }

 private:
  static constexpr double kTieTolerance = 1e-9;

  int index(Cell c) const { return c.row * belief_.cols() + c.col; }

  double q_value(Cell from, Direction d, int k) {
    const Cell to = neighbor(from, d);
    const CellLabel label = belief_.label(to);
    if (label == CellLabel::kWall) return rewards_.wall + value(from, k - 1);
    if (belief_.goal() && to == *belief_.goal()) return rewards_.goal;
    // Exploration only pays while the goal is still unknown.
    if (!belief_.goal() && !belief_.visited(to) && !entered_[index(to)]) {
      entered_[index(to)] = true;
      const double v = rewards_.discovery + value(to, k - 1);
      entered_[index(to)] = false;
      return v;
    }
    return rewards_.revisit + value(to, k - 1);
  }

  double value(Cell at, int k) {
    if (k <= 0) return 0.0;
    std::string key;
    key.reserve(entered_.size() + 3);
    key.push_back(static_cast<char>(index(at)));
    key.push_back(static_cast<char>(k));
    for (bool b : entered_) key.push_back(b ? '1' : '0');
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double v = plan(at, k).value;
    memo_.emplace(std::move(key), v);
    return v;
  }

  const BeliefMap& belief_;
  MazeRewards rewards_;
  std::vector<bool> entered_;  // unvisited cells already entered earlier in this plan
  std::unordered_map<std::string, double> memo_;
};

}  // namespace

MazePlan maze_oracle_plan(const BeliefMap& belief, int steps_remaining, const MazeRewards& rewards) {
  if (steps_remaining < 1) throw InputError("maze oracle needs at least one remaining step");
  MazePlanner planner(belief, rewards);
  return planner.plan(belief.position(), steps_remaining);
}

Direction maze_oracle_action(const BeliefMap& belief, int steps_remaining, const MazeRewards& rewards) {
  return maze_oracle_plan(belief, steps_remaining, rewards).action;
}

// ---------------------------------------------------------------------------
// Mastermind

namespace {

int distinct_index(const Code& c) {
  const auto& all = distinct_codes();
  const auto it = std::lower_bound(all.begin(), all.end(), c);
  if (it == all.end() || *it != c) return -1;
  return static_cast<int>(it - all.begin());
}

int feedback_class(const Pegs& p) { return p.black * (kCodeLength + 1) + p.white; }

}  // namespace

CandidateSet::CandidateSet(std::vector<Code> codes) : codes_(std::move(codes)) {
  for (const auto& c : codes_) {
    if (distinct_index(c) < 0) throw InputError("candidate " + format_code(c) + " is not a valid secret");
  }
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

CandidateSet CandidateSet::uniform() { return CandidateSet(distinct_codes()); }

bool CandidateSet::contains(const Code& c) const { return std::binary_search(codes_.begin(), codes_.end(), c); }

CandidateSet CandidateSet::filter(const Code& guess, const Pegs& feedback) const {
  CandidateSet out;
  for (const auto& c : codes_) {
    if (mastermind_feedback(c, guess) == feedback) out.codes_.push_back(c);
  }
  return out;
}

std::array<std::uint64_t, 2> CandidateSet::key() const {
  std::array<std::uint64_t, 2> k{};
  for (const auto& c : codes_) {
    const int i = distinct_index(c);
    k[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return k;
}

MastermindPlan MastermindSolver::best(const CandidateSet& candidates, int turns_remaining) {
  if (candidates.empty()) throw InvariantError("mastermind candidate set is empty");
  if (turns_remaining < 1) throw InputError("mastermind oracle needs at least one remaining turn");
  if (turns_remaining == 1 || candidates.size() == 1) {
    return {candidates.codes().front(), 1.0 / static_cast<double>(candidates.size())};
  }
  const auto memo_key = std::make_pair(candidates.key(), turns_remaining);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

  constexpr int kClasses = (kCodeLength + 1) * (kCodeLength + 1);
  const double n = static_cast<double>(candidates.size());
  MastermindPlan best{guesses_->front(), -1.0};
  for (const Code& guess : *guesses_) {
    if (turns_remaining == 2) {
      // One turn left after this guess: each feedback class is then won with
      // probability 1/|class|, so every non-empty class contributes 1/|C|.
      std::array<bool, kClasses> seen{};
      int classes = 0;
      for (const auto& c : candidates.codes()) {
        bool& s = seen[feedback_class(mastermind_feedback(c, guess))];
        classes += s ? 0 : 1;
        s = true;
      }
      const double total = classes / n;
      if (total > best.success_probability + 1e-12) best = {guess, total};
      continue;
    }
    std::array<std::vector<Code>, kClasses> parts;
    for (const auto& c : candidates.codes()) parts[feedback_class(mastermind_feedback(c, guess))].push_back(c);
    double total = 0.0;
    for (int cls = 0; cls < kClasses; ++cls) {
      if (parts[cls].empty()) continue;
      const double weight = static_cast<double>(parts[cls].size()) / n;
      if (cls == feedback_class({kCodeLength, 0})) {
        total += weight;
      } else {
        total += weight * value(CandidateSet(std::move(parts[cls])), turns_remaining - 1);
      }
    }
    if (total > best.success_probability + 1e-12) best = {guess, total};
  }
  memo_.emplace(memo_key, best);
  return best;
}

Code mastermind_oracle_action(const CandidateSet& candidates, int turns_remaining) {
  MastermindSolver solver;
  return solver.best(candidates, turns_remaining).guess;
}

// ---------------------------------------------------------------------------
// Full-information optimum

double binomial_tail(int n, double p, int k) {
  if (n < 0 || p < 0.0 || p > 1.0) throw InputError("binomial_tail needs n >= 0 and p in [0, 1]");
  double total = 0.0;
  for (int i = std::max(k, 0); i <= n; ++i) {
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
    const double term = (i == 0 ? 1.0 : std::pow(p, i)) * (i == n ? 1.0 : std::pow(1.0 - p, n - i));
    total += std::exp(log_choose) * term;
  }
  return std::min(total, 1.0);
}

double rps_j_star(const std::array<double, 3>& opponent, int horizon) {
  const double p = *std::max_element(opponent.begin(), opponent.end());
  return binomial_tail(horizon, p, horizon / 2 + 1);
}

double blackjack_j_star(const BlackjackDeal& deal, int horizon) {
  const std::vector<Card> dealer = {deal.dealer_up, deal.dealer_hole};
  const int dv = blackjack_hand_value(dealer);
  std::vector<Card> hand(deal.player.begin(), deal.player.end());
  // Hand values only depend on ranks, so search over rank multisets drawn from the pile.
  std::array<int, 14> available{};
  for (Card c : deal.pile) ++available[c];
  const auto search = [&](auto&& self, int hits_left, int min_rank) -> bool {
    const int pv = blackjack_hand_value(hand);
    if (pv > 21) return false;
    if (pv > dv) return true;
    if (hits_left == 0) return false;
    for (int r = min_rank; r <= 13; ++r) {
      if (available[r] == 0) continue;
      --available[r];
      hand.push_back(r);
      const bool won = self(self, hits_left - 1, r);
      hand.pop_back();
      ++available[r];
      if (won) return true;
    }
    return false;
  };
  return search(search, std::max(horizon - 1, 0), 1) ? 1.0 : 0.0;
}

double j_star(const TaskInstance& task) {
  auto env = make_environment(task);
  switch (task.env_id) {
    case EnvId::kMaze: {
      const auto& layout = dynamic_cast<const MazeEnv&>(*env).layout();
      const int d = layout.grid.shortest_path(layout.start, layout.goal);
      return d >= 0 && d <= task.horizon ? 1.0 : 0.0;
    }
    case EnvId::kMastermind:
    case EnvId::kHangman:
    case EnvId::kWordle:
    case EnvId::kTwoArmedBandit:
      return 1.0;
    case EnvId::kMinesweeper:
      return dynamic_cast<const MinesweeperEnv&>(*env).board().min_clicks() <= task.horizon ? 1.0 : 0.0;
    case EnvId::kRps:
      return rps_j_star(dynamic_cast<const RpsEnv&>(*env).opponent(), task.horizon);
    case EnvId::kBlackjack:
      return blackjack_j_star(dynamic_cast<const BlackjackEnv&>(*env).deal(), task.horizon);
  }
  throw InputError("unknown environment id");
}

}  // namespace icrl
