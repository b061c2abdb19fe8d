// Naive reference implementations used as test oracles. They share no code
// with the library beyond plain data types.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace ref {

// Black: same digit, same slot. White: for every digit value, the smaller
// of its two counts, summed, minus black.
inline std::pair<int, int> mastermind_score(const std::array<int, 3>& secret, const std::array<int, 3>& guess) {
  int black = 0;
  for (int i = 0; i < 3; ++i) black += secret[i] == guess[i];
  int common = 0;
  for (int d = 1; d <= 6; ++d) {
    common += std::min(std::count(secret.begin(), secret.end(), d), std::count(guess.begin(), guess.end(), d));
  }
  return {black, common - black};
}

// Two passes with a "used" flag per secret letter.
inline std::string wordle_marks(const std::string& secret, const std::string& guess) {
  std::string marks(5, 'X');
  std::array<bool, 5> used{};
  for (int i = 0; i < 5; ++i) {
    if (guess[i] == secret[i]) {
      marks[i] = 'G';
      used[i] = true;
    }
  }
  for (int i = 0; i < 5; ++i) {
    if (marks[i] == 'G') continue;
    for (int j = 0; j < 5; ++j) {
      if (!used[j] && secret[j] == guess[i]) {
        used[j] = true;
        marks[i] = 'Y';
        break;
      }
    }
  }
  return marks;
}

inline std::vector<std::array<int, 3>> secrets() {
  std::vector<std::array<int, 3>> out;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c)
        if (a != b && b != c && a != c) out.push_back({a, b, c});
  return out;
}

inline std::vector<std::array<int, 3>> every_guess() {
  std::vector<std::array<int, 3>> out;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c) out.push_back({a, b, c});
  return out;
}

// Game-tree search: for each guess, split the remaining secrets by feedback,
// play each branch out recursively and count wins. Secrets are indices into
// secrets(); the memo key is the set as a 120-bit mask plus turns left.
class MastermindTree {
 public:
  explicit MastermindTree(std::vector<std::array<int, 3>> guesses) : all_(secrets()) {
    for (const auto& g : guesses) {
      std::vector<std::uint8_t> row;
      for (const auto& s : all_) {
        const auto [b, w] = mastermind_score(s, g);
        row.push_back(static_cast<std::uint8_t>(b * 4 + w));
      }
      score_.push_back(std::move(row));
    }
  }

  // Probability of winning with `turns` guesses when the secret is uniform over `cands`.
  double value(const std::vector<std::array<int, 3>>& cands, int turns) {
    std::vector<int> idx;
    for (const auto& c : cands) idx.push_back(static_cast<int>(std::find(all_.begin(), all_.end(), c) - all_.begin()));
    return value_of(idx, turns);
  }

 private:
  double value_of(const std::vector<int>& cands, int turns) {
    if (cands.empty() || turns == 0) return 0.0;
    Key key{0, 0, turns};
    for (int i : cands) (i < 64 ? key.lo : key.hi) |= std::uint64_t{1} << (i % 64);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    double best = 0.0;
    for (const auto& row : score_) {
      if (turns == 1) {
        // Later branches have no turns left and are worth nothing.
        int wins = 0;
        for (int s : cands) wins += row[s] == 12;
        best = std::max(best, wins / static_cast<double>(cands.size()));
        continue;
      }
      std::array<std::vector<int>, 16> groups;
      for (int s : cands) groups[row[s]].push_back(s);
      double wins = 0.0;
      for (int fb = 0; fb < 16; ++fb) {
        if (groups[fb].empty()) continue;
        if (fb == 12) {  // three black
          wins += 1.0;
        } else {
          wins += static_cast<double>(groups[fb].size()) * value_of(groups[fb], turns - 1);
        }
      }
      best = std::max(best, wins / static_cast<double>(cands.size()));
    }
    memo_.emplace(key, best);
    return best;
  }

  struct Key {
    std::uint64_t lo, hi;
    int turns;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.lo * 31 + k.hi * 1000003 + k.turns); }
  };

  std::vector<std::array<int, 3>> all_;
  std::vector<std::vector<std::uint8_t>> score_;
  std::unordered_map<Key, double, KeyHash> memo_;
};

// Blackjack hand value by trying every ace assignment.
inline int blackjack_value(const std::vector<int>& ranks) {
  int base = 0;
  int aces = 0;
  for (int r : ranks) {
    if (r == 1) ++aces;
    else base += std::min(r, 10);
  }
  int best = -1;
  int smallest = 1 << 30;
  for (int elevens = 0; elevens <= aces; ++elevens) {
    const int v = base + elevens * 11 + (aces - elevens);
    smallest = std::min(smallest, v);
    if (v <= 21) best = std::max(best, v);
  }
  return best >= 0 ? best : smallest;
}

// BFS over an open-cell grid given as strings ('#' wall).
inline int bfs(const std::vector<std::string>& grid, std::pair<int, int> from, std::pair<int, int> to) {
  const int rows = static_cast<int>(grid.size());
  const int cols = static_cast<int>(grid[0].size());
  std::vector<std::vector<int>> dist(rows, std::vector<int>(cols, -1));
  std::queue<std::pair<int, int>> q;
  dist[from.first][from.second] = 0;
  q.push(from);
  const int dr[] = {-1, 1, 0, 0};
  const int dc[] = {0, 0, -1, 1};
  while (!q.empty()) {
    auto [r, c] = q.front();
    q.pop();
    if (std::make_pair(r, c) == to) return dist[r][c];
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k];
      const int nc = c + dc[k];
      if (nr < 0 || nc < 0 || nr >= rows || nc >= cols || grid[nr][nc] == '#' || dist[nr][nc] >= 0) continue;
      dist[nr][nc] = dist[r][c] + 1;
      q.push({nr, nc});
    }
  }
  return -1;
}

// Binomial tail by explicit enumeration of all 2^n outcome sequences.
inline double binomial_tail_enumerated(int n, double p, int k) {
  double total = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    int wins = 0;
    double prob = 1.0;
    for (int i = 0; i < n; ++i) {
      const bool w = (mask >> i) & 1;
      wins += w;
      prob *= w ? p : 1.0 - p;
    }
    if (wins >= k) total += prob;
  }
  return total;
}

}  // namespace ref
