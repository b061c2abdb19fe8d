// One PASS/FAIL line per acceptance criterion. Tolerances are pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "icrl/agents.hpp"
#include "icrl/commands.hpp"
#include "icrl/envs/bandit.hpp"
#include "icrl/envs/wordle.hpp"
#include "icrl/grpo.hpp"
#include "icrl/metrics.hpp"
#include "icrl/oracles.hpp"
#include "icrl/transcript_io.hpp"
#include "reference/manual_protocol.hpp"
#include "reference/reference.hpp"
#include "reference/stub_server.hpp"

using namespace icrl;
namespace fs = std::filesystem;

namespace {

constexpr double kMastermindTol = 1e-12;
constexpr double kMastermindSeconds = 10.0;
constexpr double kFeedbackSeconds = 1.0;
constexpr int kWordleCases = 10000;
constexpr int kMazeInstances = 100;
constexpr int kGradBatches = 1000;
constexpr double kGradRelTol = 1e-5;
constexpr double kGradAbsFloor = 1e-8;
constexpr double kClipMargin = 1e-3;  // distance in ratio space kept from either clip bound
constexpr double kClipExampleTol = 1e-15;
constexpr double kToyTarget = 0.9;
constexpr double kToySeconds = 60.0;
constexpr int kRegretInstances = 256;

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result mastermind_exactness() {
  const auto t0 = Clock::now();
  MastermindSolver solver;
  const double dp = solver.value(CandidateSet::uniform(), 3);
  const double dp_secs = seconds_since(t0);
  const auto t1 = Clock::now();
  ref::MastermindTree tree(ref::secrets());
  const double brute = tree.value(ref::secrets(), 3);
  const double brute_secs = seconds_since(t1);
  double worst = std::abs(dp - brute);
  // Guesses with repeated digits allowed.
  const auto t2 = Clock::now();
  MastermindSolver dup_solver(true);
  const double dp_dup = dup_solver.value(CandidateSet::uniform(), 3);
  const double dup_dp_secs = seconds_since(t2);
  const auto t3 = Clock::now();
  ref::MastermindTree dup_tree(ref::every_guess());
  const double brute_dup = dup_tree.value(ref::secrets(), 3);
  const double dup_brute_secs = seconds_since(t3);
  worst = std::max(worst, std::abs(dp_dup - brute_dup));
  const double secs = seconds_since(t0);
  return {worst <= kMastermindTol && secs < kMastermindSeconds,
          fmt("dp=%.15f brute=%.15f", dp, brute) + fmt(" dup dp=%.15f max|diff|=%.2e", dp_dup, worst) +
              fmt(" time=%.2fs (dp %.2f, brute %.2f,", secs, dp_secs, brute_secs) +
              fmt(" dup dp %.2f, dup brute %.2f)", dup_dp_secs, dup_brute_secs)};
}

Result mastermind_feedback_exhaustive() {
  const auto t0 = Clock::now();
  int mismatches = 0;
  int pairs = 0;
  for (const auto& s : distinct_codes()) {
    for (const auto& g : all_codes()) {
      const auto [b, w] = ref::mastermind_score(s, g);
      mismatches += mastermind_feedback(s, g) == Pegs{b, w} ? 0 : 1;
      ++pairs;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && pairs == 120 * 216 && secs < kFeedbackSeconds,
          std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches" + fmt(", time=%.3fs", secs)};
}

Result wordle_feedback_check() {
  const bool example = wordle_feedback("PLACE", "ALIEN") == "YGXYX";
  const bool identity = wordle_feedback("CRANE", "CRANE") == "GGGGG";
  Rng rng(2024, "wordle-acceptance");
  int mismatches = 0;
  for (int i = 0; i < kWordleCases; ++i) {
    // Small alphabets force repeated letters.
    const std::uint64_t alphabet = 2 + rng.below(4);
    std::string s(5, 'A'), g(5, 'A');
    for (auto& c : s) c = static_cast<char>('A' + rng.below(alphabet));
    for (auto& c : g) c = static_cast<char>('A' + rng.below(alphabet));
    mismatches += wordle_feedback(s, g) == ref::wordle_marks(s, g) ? 0 : 1;
  }
  return {example && identity && mismatches == 0,
          std::string("PLACE/ALIEN=") + wordle_feedback("PLACE", "ALIEN") + ", identity=" +
              wordle_feedback("CRANE", "CRANE") + ", random " + std::to_string(mismatches) + "/" +
              std::to_string(kWordleCases) + " mismatches"};
}

Result maze_oracle_check() {
  int wrong_length = 0;
  int failures = 0;
  int wall_picks = 0;
  int wall_hits = 0;
  int steps = 0;
  for (int i = 0; i < kMazeInstances; ++i) {
    const TaskInstance task = make_task(EnvId::kMaze, 1000 + i);
    auto env = make_environment(task);
    const MazeLayout layout = dynamic_cast<MazeEnv&>(*env).layout();
    std::vector<std::string> grid;
    for (int r = 0; r < layout.grid.rows(); ++r) {
      std::string row;
      for (int c = 0; c < layout.grid.cols(); ++c) row += layout.grid.is_path({r, c}) ? '.' : '#';
      grid.push_back(row);
    }
    const int bfs = ref::bfs(grid, {layout.start.row, layout.start.col}, {layout.goal.row, layout.goal.col});

    auto revealed = MazeOracleAgent::with_revealed_map(layout);
    const Transcript full = run_task(task, revealed);
    for (int e = 1; e <= task.episodes; ++e) {
      if (!full.episode_succeeded(e)) ++failures;
      if (static_cast<int>(full.episode(e).size()) != bfs) ++wrong_length;
    }

    MazeOracleAgent partial(layout.grid.rows(), layout.grid.cols());
    const Transcript t = run_task(task, partial);
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      const auto& s = t.steps[k];
      auto history = to_chat(std::span(t.steps).subspan(0, k), task.horizon);
      history.push_back({Role::kUser, s.observation});
      const BeliefMap belief = partial.belief_from(history);
      const auto dir = direction_from_string(s.action);
      if (dir && belief.label(neighbor(belief.position(), *dir)) == CellLabel::kWall) ++wall_picks;
      if (s.next_observation.rfind("You hit a wall", 0) == 0) ++wall_hits;
      ++steps;
    }
  }
  return {wrong_length == 0 && failures == 0 && wall_picks == 0,
          std::to_string(kMazeInstances) + " mazes: " + std::to_string(failures) + " revealed failures, " +
              std::to_string(wrong_length) + " non-shortest episodes; partial: " + std::to_string(wall_picks) +
              " known-wall picks, " + std::to_string(wall_hits) + " wall bumps over " + std::to_string(steps) +
              " steps"};
}

Result protocol_fidelity() {
  const std::vector<std::tuple<EnvId, int, int>> caps = {
      {EnvId::kMaze, 9, 3},     {EnvId::kMastermind, 3, 3}, {EnvId::kRps, 5, 3},      {EnvId::kMinesweeper, 8, 3},
      {EnvId::kHangman, 10, 3}, {EnvId::kWordle, 10, 3},    {EnvId::kBlackjack, 4, 3}};
  int cap_errors = 0;
  for (const auto& [id, h, t] : caps) {
    const TaskInstance task = make_task(id, 0);
    cap_errors += (task.horizon == h && task.episodes == t) ? 0 : 1;
  }
  int differ = 0;
  int frozen_differ = 0;
  int marker_errors = 0;
  for (const auto& c : ref::golden_cases()) {
    const TaskInstance task = make_task(c.env, c.seed);
    auto agent = ScriptedAgent::same_every_episode(c.script);
    const Transcript got = run_task(task, agent);
    const std::string text = to_jsonl(got);
    differ += text == to_jsonl(ref::manual_run(task, c.script)) ? 0 : 1;
    const fs::path frozen = fs::path(ICRL_TEST_DATA_DIR) / "transcripts" / (std::string(to_string(c.env)) + ".jsonl");
    frozen_differ += slurp(frozen) == text ? 0 : 1;
    int starts = 0;
    for (const auto& s : got.steps) {
      const bool marked = s.observation.rfind("New episode begins.", 0) == 0;
      if (marked != (s.step_index == 0)) ++marker_errors;
      starts += marked ? 1 : 0;
    }
    if (starts != task.episodes) ++marker_errors;
    for (int len : got.episode_lengths) marker_errors += len <= task.horizon ? 0 : 1;
  }
  return {cap_errors == 0 && differ == 0 && frozen_differ == 0 && marker_errors == 0,
          std::to_string(ref::golden_cases().size()) + " scripted runs: " + std::to_string(differ) +
              " differ from the hand-built loop, " + std::to_string(frozen_differ) + " differ from frozen files, " +
              std::to_string(marker_errors) + " marker/cap errors, " + std::to_string(cap_errors) + " table cap errors"};
}

Result grpo_numerics() {
  const ClipConfig clip;
  Rng rng(99, "grpo-acceptance");
  double worst = 0.0;
  int checked = 0;
  for (int n = 0; n < kGradBatches; ++n) {
    GroupBatch b;
    const int k = 2 + static_cast<int>(rng.below(6));
    for (int i = 0; i < k; ++i) {
      b.rewards.push_back(static_cast<double>(rng.below(4)));
      std::vector<double> old, cur;
      const int len = 1 + static_cast<int>(rng.below(5));
      for (int t = 0; t < len; ++t) {
        const double o = -0.05 - 3.0 * rng.uniform();
        double r = 0.0;
        do {
          r = std::exp(0.8 * (rng.uniform() - 0.5));
        } while (std::abs(r - (1 - clip.eps_low)) < kClipMargin || std::abs(r - (1 + clip.eps_high)) < kClipMargin);
        old.push_back(o);
        cur.push_back(o + std::log(r));
      }
      b.logp_old.push_back(old);
      b.logp_new.push_back(cur);
    }
    const auto g = clipped_surrogate_grad(b, clip);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t t = 0; t < b.logp_new[i].size(); ++t) {
        const double h = 1e-6;
        GroupBatch plus = b, minus = b;
        plus.logp_new[i][t] += h;
        minus.logp_new[i][t] -= h;
        const double fd = (clipped_surrogate(plus, clip) - clipped_surrogate(minus, clip)) / (2 * h);
        const double err = std::abs(g[i][t] - fd) / std::max(std::abs(fd), kGradAbsFloor);
        if (std::abs(fd) > kGradAbsFloor || std::abs(g[i][t]) > kGradAbsFloor) worst = std::max(worst, err);
        ++checked;
      }
    }
  }
  const auto one_term = [&](double adv_reward, double ratio) {
    GroupBatch b;
    b.rewards = {adv_reward, -adv_reward};  // advantages +-adv_reward
    b.logp_old = {{0.0}, {}};
    b.logp_new = {{std::log(ratio)}, {}};
    return clipped_surrogate(b, clip) * 2.0;
  };
  const double up = one_term(1.0, 1.5);
  const double down = one_term(-1.0, 0.5);
  const double inside = one_term(1.0, 1.1);
  const bool examples = std::abs(up - 1.28) <= kClipExampleTol && std::abs(down + 0.8) <= kClipExampleTol &&
                        std::abs(inside - std::exp(std::log(1.1))) <= kClipExampleTol;
  return {worst <= kGradRelTol && examples,
          std::to_string(checked) + " partials over " + std::to_string(kGradBatches) + " batches" +
              fmt(", max rel err %.2e; examples %.15g %.15g", worst, up, down) + fmt(" %.15g", inside)};
}

Result toy_meta_learning() {
  const auto t0 = Clock::now();
  ToyTrainConfig cfg;
  SoftmaxTablePolicy policy(2);
  const auto curve = toy_meta_train(cfg, policy);
  const double secs = seconds_since(t0);
  int first_hit = -1;
  for (const auto& p : curve) {
    if (p.episode2_success > kToyTarget) {
      first_hit = p.step;
      break;
    }
  }
  // Episode-2 optimum over deterministic policies: first arm, then an arm per episode-1 outcome.
  double optimum = 0.0;
  for (int first = 0; first < 2; ++first) {
    for (int after_win = 0; after_win < 2; ++after_win) {
      for (int after_loss = 0; after_loss < 2; ++after_loss) {
        double wins = 0.0;
        for (int good = 0; good < 2; ++good) {
          TwoArmedBanditEnv env(good, 1);
          env.reset();
          const bool won = env.step(std::to_string(first)).success;
          env.reset();
          wins += env.step(std::to_string(won ? after_win : after_loss)).success ? 0.5 : 0.0;
        }
        optimum = std::max(optimum, wins);
      }
    }
  }
  const double final_ep2 = curve.back().episode2_success;
  return {first_hit >= 0 && first_hit <= cfg.steps && secs < kToySeconds && optimum == 1.0,
          fmt("seed %.0f, lr %.3g: ep2 success %.4f", static_cast<double>(cfg.seed), cfg.learning_rate, final_ep2) +
              fmt(" (first > 0.9 at step %.0f, optimum %.2f)", first_hit, optimum) + fmt(", time=%.2fs", secs)};
}

Result metrics_check() {
  const std::uint64_t seed = 21;
  const Code secret = generate_mastermind_secret(seed);
  std::vector<std::string> pool;
  for (const auto& c : distinct_codes()) {
    if (c != secret) pool.push_back(format_code(c));
  }
  // Episode 1: A B C; episode 2: A D E; episode 3: F B G. Nothing solves.
  AgentSpec spec;
  spec.kind = "fail-then-diverge";
  spec.scripts = {{pool[0], pool[1], pool[2]}, {pool[0], pool[3], pool[4]}, {pool[5], pool[1], pool[6]}};
  const TaskInstance task = make_task(EnvId::kMastermind, seed);
  auto agent = make_agent(spec, task, 0);
  const std::vector<Transcript> runs = {run_task(task, *agent)};
  const DeltaStates d = delta_states(runs);
  const bool delta_ok = d.ep2_given_f1.count == 1 && d.ep2_given_f1.mean == 2.0 && d.ep3_given_f12.count == 1 &&
                        d.ep3_given_f12.mean == 2.0;

  int reconcile_errors = 0;
  for (EnvId id : benchmark_envs()) {
    std::vector<Transcript> suite;
    for (std::uint64_t s = 0; s < 16; ++s) {
      RandomAgent random(id, 500 + s);
      suite.push_back(run_task(make_task(id, s), random));
    }
    const auto rate = success_by_episode(suite);
    double from_rate = 0.0;
    for (double r : rate) from_rate += r * static_cast<double>(suite.size());
    int total = 0;
    for (const auto& t : suite) total += trajectory_reward(t);
    if (std::lround(from_rate) != total || std::abs(from_rate - total) > 1e-9) ++reconcile_errors;
    if (evaluate(suite).total_successes != total) ++reconcile_errors;
  }
  return {delta_ok && reconcile_errors == 0,
          fmt("fail-then-diverge dStates ep2|F1=%.1f ep3|F1F2=%.1f (expected 2, 2)", d.ep2_given_f1.mean.value_or(-1),
              d.ep3_given_f12.mean.value_or(-1)) +
              "; " + std::to_string(reconcile_errors) + " reconciliation errors over 7 suites"};
}

Result regret_dominance() {
  std::vector<Transcript> random_runs, oracle_runs;
  for (int i = 0; i < kRegretInstances; ++i) {
    const TaskInstance task = make_task(EnvId::kMastermind, static_cast<std::uint64_t>(i));
    RandomAgent random(EnvId::kMastermind, 77 + i);
    random_runs.push_back(run_task(task, random));
    MastermindOracleAgent oracle;
    oracle_runs.push_back(run_task(task, oracle));
  }
  const auto r = regret_curve(random_runs, 1.0);
  const auto o = regret_curve(oracle_runs, 1.0);
  int violations = 0;
  for (std::size_t e = 0; e < r.size(); ++e) violations += r[e] >= o[e] ? 0 : 1;
  return {violations == 0, fmt("random regret %.3f %.3f %.3f", r[0], r[1], r[2]) +
                               fmt(" vs oracle %.3f %.3f %.3f", o[0], o[1], o[2]) + ", " +
                               std::to_string(violations) + " violations"};
}

Result remote_end_to_end() {
  // Canned replies: cycle through fixed guesses for Mastermind and moves for Maze.
  const std::vector<std::string> canned = {"I will try \\boxed{1 2 3}", "\\boxed{4 5 6}", "\\boxed{up}",
                                           "\\boxed{right}"};
  ref::StubServer server([&](int n, const nlohmann::json& body) -> std::pair<int, std::string> {
    const std::string last = body["messages"].back()["content"];
    const bool maze = last.find("maze") != std::string::npos || last.find("Around you") != std::string::npos;
    return {200, ref::StubServer::reply(canned[(maze ? 2 : 0) + n % 2])};
  });
  const fs::path out = fs::temp_directory_path() / "icrl-acceptance-e2e";
  fs::remove_all(out);
  RunConfig cfg = run_config_from_json(
      {{"suite", {{{"env", "mastermind"}, {"instances", 3}}, {{"env", "maze"}, {"instances", 2}}}},
       {"agent", {{"kind", "remote-llm"}, {"remote", {{"model", "stub"}, {"base_url", server.base_url()},
                                                       {"max_retries", 1}, {"timeout_seconds", 10.0}}}}},
       {"rollouts", 1},
       {"parallel", 2},
       {"out", out.string()}});
  std::ostringstream log;
  const int code = cmd_eval(cfg, log);
  const bool have_report = fs::exists(out / "report.json") && fs::exists(out / "report.csv");
  int transcripts = 0;
  if (fs::exists(out / "instances")) {
    for (const auto& e : fs::recursive_directory_iterator(out / "instances")) transcripts += e.is_regular_file();
  }
  int reported = 0;
  if (have_report) {
    for (const auto& r : nlohmann::json::parse(slurp(out / "report.json"))) reported += r["transcripts"].get<int>();
  }
  const bool ok = code == 0 && have_report && transcripts == 5 && reported == 5 && !fs::exists(out / "failures.json");
  return {ok, "exit " + std::to_string(code) + ", " + std::to_string(transcripts) + " transcripts, " +
                  std::to_string(reported) + " reported, " + std::to_string(server.requests().size()) +
                  " requests served"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"mastermind-oracle-exactness", mastermind_exactness},
      {"mastermind-feedback", mastermind_feedback_exhaustive},
      {"wordle-feedback", wordle_feedback_check},
      {"maze-oracle", maze_oracle_check},
      {"protocol-fidelity", protocol_fidelity},
      {"grpo-numerics", grpo_numerics},
      {"toy-meta-learning", toy_meta_learning},
      {"metrics", metrics_check},
      {"regret-dominance", regret_dominance},
      {"remote-end-to-end", remote_end_to_end},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += r.pass ? 0 : 1;
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
