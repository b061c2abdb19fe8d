#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "icrl/task.hpp"

namespace icrl {

/// Success rate per episode index across transcripts sharing one env and T.
std::vector<double> success_by_episode(std::span<const Transcript> transcripts);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for a binomial proportion (95% by default).
Interval wilson_interval(int successes, int trials, double z = 1.959963984540054);

/// States an episode touched. Pluggable per environment.
using EpisodeStateFn =
    std::function<std::set<std::string>(EnvId, std::span<const StepRecord> episode_steps)>;

/// Maze: visited cell coordinates (including the goal when reached);
/// Mastermind: guesses; other games: the rendered public state before each step.
std::set<std::string> default_episode_states(EnvId env, std::span<const StepRecord> steps);

struct ConditionalMean {
  std::optional<double> mean;  // absent when nothing met the condition
  int count = 0;
};

struct DeltaStates {
  ConditionalMean ep2_given_f1;
  ConditionalMean ep3_given_f12;
};

/// New states in episode 2 after an episode-1 failure, and in episode 3
/// after failures in both episodes 1 and 2, averaged over qualifying runs.
DeltaStates delta_states(std::span<const Transcript> transcripts,
                         const EpisodeStateFn& states = default_episode_states);

/// Reg_e = e * j_star - mean cumulative binary return through episode e.
std::vector<double> regret_curve(std::span<const Transcript> transcripts, double j_star);
/// Same, with a per-transcript optimum.
std::vector<double> regret_curve(std::span<const Transcript> transcripts,
                                 std::span<const double> j_stars);

struct EvalReport {
  std::string env_id;
  int episodes = 0;
  int instances = 0;
  int rollouts = 0;
  int transcripts = 0;
  int truncated = 0;
  std::vector<double> success_rate;
  std::vector<Interval> success_interval;
  double mean_j_star = 0.0;
  std::vector<double> regret;
  double mean_regret = 0.0;  // regret after the last episode
  std::optional<DeltaStates> delta;  // present when T >= 3
  int total_successes = 0;
  // Filled by compare_to_baseline.
  std::optional<std::vector<double>> baseline_success_rate;
  std::optional<std::vector<double>> delta_vs_baseline;
};

/// Computes the report; j_star per transcript is recomputed from its task.
EvalReport evaluate(std::span<const Transcript> transcripts);
void compare_to_baseline(EvalReport& report, const EvalReport& baseline);

nlohmann::json to_json(const EvalReport& report);
/// env_id,episode,success_rate,ci_low,ci_high[,baseline_rate,delta]
std::string to_csv(std::span<const EvalReport> reports);
/// "Ep 3 Success 0.55" plus "Δ vs. Base +0.33" when a baseline is attached.
std::string format_episode_row(const EvalReport& report, int episode);

}  // namespace icrl
