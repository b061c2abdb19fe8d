#include "icrl/task.hpp"

#include <algorithm>
#include <array>

#include "icrl/errors.hpp"

namespace icrl {
namespace {

struct EnvInfo {
  EnvId id;
  std::string_view name;
  TableLimits limits;
};

constexpr std::array<EnvInfo, 8> kEnvInfo = {{
    {EnvId::kRps, "rps", {5, 3}},
    {EnvId::kMinesweeper, "minesweeper", {8, 3}},
    {EnvId::kHangman, "hangman", {10, 3}},
    {EnvId::kWordle, "wordle", {10, 3}},
    {EnvId::kBlackjack, "blackjack", {4, 3}},
    {EnvId::kMaze, "maze", {9, 3}},
    {EnvId::kMastermind, "mastermind", {3, 3}},
    {EnvId::kTwoArmedBandit, "bandit", {1, 2}},
}};

const EnvInfo& info(EnvId id) {
  for (const auto& e : kEnvInfo) {
    if (e.id == id) return e;
  }
  throw InputError("unknown environment id");
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

std::string_view to_string(EnvId id) { return info(id).name; }

EnvId env_id_from_string(std::string_view name) {
  for (const auto& e : kEnvInfo) {
    if (e.name == name) return e.id;
  }
  throw InputError("unknown environment '" + std::string(name) + "'");
}

const std::vector<EnvId>& benchmark_envs() {
  static const std::vector<EnvId> envs = {EnvId::kRps,       EnvId::kMinesweeper, EnvId::kHangman,
                                          EnvId::kWordle,    EnvId::kBlackjack,   EnvId::kMaze,
                                          EnvId::kMastermind};
  return envs;
}

TableLimits table_limits(EnvId id) { return info(id).limits; }

EnvParams default_params(EnvId id) {
  switch (id) {
    case EnvId::kMaze: return MazeParams{};
    case EnvId::kMastermind: return MastermindParams{};
    case EnvId::kRps: return RpsParams{};
    case EnvId::kMinesweeper: return MinesweeperParams{};
    case EnvId::kHangman: return HangmanParams{};
    case EnvId::kWordle: return WordleParams{};
    case EnvId::kBlackjack: return BlackjackParams{};
    case EnvId::kTwoArmedBandit: return BanditParams{};
  }
  throw InputError("unknown environment id");
}

nlohmann::json params_to_json(const EnvParams& params) {
  using nlohmann::json;
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        json j = json::object();
        if constexpr (std::is_same_v<P, MazeParams>) {
          j = {{"rows", p.rows}, {"cols", p.cols}, {"path_min", p.path_min}, {"path_max", p.path_max}};
          if (!p.layout.empty()) j["layout"] = p.layout;
        } else if constexpr (std::is_same_v<P, RpsParams>) {
          if (p.opponent) j["opponent"] = *p.opponent;
        } else if constexpr (std::is_same_v<P, MinesweeperParams>) {
          j = {{"rows", p.rows}, {"cols", p.cols}, {"mines", p.mines}};
          if (!p.mine_cells.empty()) j["mine_cells"] = p.mine_cells;
        } else if constexpr (std::is_same_v<P, HangmanParams> || std::is_same_v<P, WordleParams>) {
          if (!p.word.empty()) j["word"] = p.word;
        } else if constexpr (std::is_same_v<P, BanditParams>) {
          if (p.good_arm) j["good_arm"] = *p.good_arm;
        }
        return j;
      },
      params);
}

EnvParams params_from_json(EnvId id, const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("params must be a JSON object");
  try {
    switch (id) {
      case EnvId::kMaze: {
        MazeParams p;
        p.rows = get_or(j, "rows", p.rows);
        p.cols = get_or(j, "cols", p.cols);
        p.path_min = get_or(j, "path_min", p.path_min);
        p.path_max = get_or(j, "path_max", p.path_max);
        p.layout = get_or(j, "layout", p.layout);
        return p;
      }
      case EnvId::kMastermind: return MastermindParams{};
      case EnvId::kRps: {
        RpsParams p;
        if (j.contains("opponent")) p.opponent = j.at("opponent").get<std::array<double, 3>>();
        return p;
      }
      case EnvId::kMinesweeper: {
        MinesweeperParams p;
        p.rows = get_or(j, "rows", p.rows);
        p.cols = get_or(j, "cols", p.cols);
        p.mines = get_or(j, "mines", p.mines);
        p.mine_cells = get_or(j, "mine_cells", p.mine_cells);
        return p;
      }
      case EnvId::kHangman: return HangmanParams{get_or<std::string>(j, "word", "")};
      case EnvId::kWordle: return WordleParams{get_or<std::string>(j, "word", "")};
      case EnvId::kBlackjack: return BlackjackParams{};
      case EnvId::kTwoArmedBandit: {
        BanditParams p;
        if (j.contains("good_arm")) p.good_arm = j.at("good_arm").get<int>();
        return p;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad params for ") + std::string(to_string(id)) + ": " + e.what());
  }
  throw InputError("unknown environment id");
}

TaskInstance make_task(EnvId id, std::uint64_t seed) {
  const auto limits = table_limits(id);
  return TaskInstance{id, seed, limits.horizon, limits.episodes, default_params(id)};
}

void validate(const TaskInstance& task) {
  if (task.horizon < 1) throw InputError("horizon must be at least 1");
  if (task.episodes < 1) throw InputError("episode count must be at least 1");
  if (default_params(task.env_id).index() != task.params.index()) {
    throw InputError("params do not match environment " + std::string(to_string(task.env_id)));
  }
}

std::vector<StepRecord> Transcript::episode(int e) const {
  std::vector<StepRecord> out;
  std::copy_if(steps.begin(), steps.end(), std::back_inserter(out),
               [e](const StepRecord& s) { return s.episode_index == e; });
  return out;
}

bool Transcript::episode_succeeded(int e) const {
  return std::any_of(steps.begin(), steps.end(), [e](const StepRecord& s) {
    return s.episode_index == e && s.success;
  });
}

void validate(const Transcript& transcript) {
  validate(transcript.task);
  const auto& task = transcript.task;
  int episode = 0;
  int expected_step = 0;
  bool closed = false;
  std::vector<int> lengths;
  for (const auto& s : transcript.steps) {
    if (s.success && !s.terminal) throw InputError("step marked success without terminal");
    if (s.episode_index != episode) {
      if (s.episode_index != episode + 1) throw InputError("episode indices are not contiguous");
      episode = s.episode_index;
      expected_step = 0;
      closed = false;
      lengths.push_back(0);
    }
    if (episode > task.episodes) throw InputError("more episodes than the task allows");
    if (closed) throw InputError("step after a terminal step in the same episode");
    if (s.step_index != expected_step) throw InputError("step indices are not contiguous");
    if (s.step_index >= task.horizon) throw InputError("step index beyond the horizon");
    closed = s.terminal;
    ++expected_step;
    ++lengths.back();
  }
  if (lengths != transcript.episode_lengths) {
    throw InputError("episode_lengths do not match the recorded steps");
  }
}

}  // namespace icrl
