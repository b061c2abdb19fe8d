#include "icrl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "icrl/errors.hpp"
#include "icrl/oracles.hpp"
#include "icrl/protocol.hpp"
#include "icrl/transcript_io.hpp"

namespace icrl {
namespace {

void check_homogeneous(std::span<const Transcript> transcripts) {
  if (transcripts.empty()) throw InputError("no transcripts to summarize");
  const auto& first = transcripts.front().task;
  for (const auto& t : transcripts) {
    if (t.task.env_id != first.env_id || t.task.episodes != first.episodes) {
      throw InputError("transcripts mix environments or episode counts");
    }
  }
}

std::string fixed2(double x, bool sign = false) {
  char buf[32];
  std::snprintf(buf, sizeof buf, sign ? "%+.2f" : "%.2f", x);
  return buf;
}

std::set<std::string> unite(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

int count_new(const std::set<std::string>& now, const std::set<std::string>& before) {
  int n = 0;
  for (const auto& s : now) n += before.count(s) ? 0 : 1;
  return n;
}

}  // namespace

std::vector<double> success_by_episode(std::span<const Transcript> transcripts) {
  check_homogeneous(transcripts);
  const int episodes = transcripts.front().task.episodes;
  std::vector<double> rate(episodes, 0.0);
  for (const auto& t : transcripts) {
    const auto g = episode_returns(t);
    for (int e = 0; e < episodes; ++e) rate[e] += g[e];
  }
  for (double& r : rate) r /= static_cast<double>(transcripts.size());
  return rate;
}

Interval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw InputError("wilson interval needs 0 <= successes <= trials and trials > 0");
  }
  const double n = trials;
  const double p = successes / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::set<std::string> default_episode_states(EnvId env, std::span<const StepRecord> steps) {
  std::set<std::string> out;
  switch (env) {
    case EnvId::kMaze: {
      std::optional<Cell> position;
      for (const auto& s : steps) {
        for (const std::string* text : {&s.observation, &s.next_observation}) {
          if (text == &s.next_observation && text->find("Congratulations") != std::string::npos) {
            const auto dir = direction_from_string(s.action);
            if (position && dir) out.insert(format_cell(neighbor(*position, *dir)));
            continue;
          }
          if (auto obs = parse_maze_observation(*text)) {
            position = obs->position;
            out.insert(format_cell(obs->position));
          }
        }
      }
      break;
    }
    case EnvId::kMastermind:
      for (const auto& s : steps) {
        if (!s.action.empty()) out.insert(s.action);
      }
      break;
    default:
      for (const auto& s : steps) out.insert(s.observation);
      break;
  }
  return out;
}

DeltaStates delta_states(std::span<const Transcript> transcripts, const EpisodeStateFn& states) {
  double sum2 = 0.0;
  double sum3 = 0.0;
  DeltaStates d;
  for (const auto& t : transcripts) {
    const auto started = static_cast<int>(t.episode_lengths.size());
    if (started < 2) continue;
    const auto e1 = t.episode(1);
    const auto e2 = t.episode(2);
    const auto s1 = states(t.task.env_id, e1);
    const auto s2 = states(t.task.env_id, e2);
    if (!t.episode_succeeded(1)) {
      sum2 += count_new(s2, s1);
      ++d.ep2_given_f1.count;
      if (started >= 3 && !t.episode_succeeded(2)) {
        const auto e3 = t.episode(3);
        sum3 += count_new(states(t.task.env_id, e3), unite(s1, s2));
        ++d.ep3_given_f12.count;
      }
    }
  }
  if (d.ep2_given_f1.count > 0) d.ep2_given_f1.mean = sum2 / d.ep2_given_f1.count;
  if (d.ep3_given_f12.count > 0) d.ep3_given_f12.mean = sum3 / d.ep3_given_f12.count;
  return d;
}

std::vector<double> regret_curve(std::span<const Transcript> transcripts, double j_star) {
  std::vector<double> js(transcripts.size(), j_star);
  return regret_curve(transcripts, js);
}

std::vector<double> regret_curve(std::span<const Transcript> transcripts, std::span<const double> j_stars) {
  check_homogeneous(transcripts);
  if (j_stars.size() != transcripts.size()) throw InputError("one j_star per transcript is required");
  const int episodes = transcripts.front().task.episodes;
  std::vector<double> reg(episodes, 0.0);
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const auto g = episode_returns(transcripts[i]);
    double cumulative = 0.0;
    for (int e = 0; e < episodes; ++e) {
      cumulative += g[e];
      reg[e] += (e + 1) * j_stars[i] - cumulative;
    }
  }
  for (double& r : reg) r /= static_cast<double>(transcripts.size());
  return reg;
}

EvalReport evaluate(std::span<const Transcript> transcripts) {
  check_homogeneous(transcripts);
  EvalReport report;
  const auto& first = transcripts.front().task;
  report.env_id = std::string(to_string(first.env_id));
  report.episodes = first.episodes;
  report.transcripts = static_cast<int>(transcripts.size());

  std::map<std::string, double> j_cache;
  std::map<std::string, int> per_instance;
  std::vector<double> js;
  for (const auto& t : transcripts) {
    const std::string key = task_to_json(t.task).dump();
    auto it = j_cache.find(key);
    if (it == j_cache.end()) it = j_cache.emplace(key, j_star(t.task)).first;
    js.push_back(it->second);
    ++per_instance[key];
    report.truncated += t.truncated ? 1 : 0;
    report.total_successes += trajectory_reward(t);
  }
  report.instances = static_cast<int>(per_instance.size());
  for (const auto& [key, n] : per_instance) report.rollouts = std::max(report.rollouts, n);

  report.success_rate = success_by_episode(transcripts);
  for (double rate : report.success_rate) {
    const int successes = static_cast<int>(std::lround(rate * report.transcripts));
    report.success_interval.push_back(wilson_interval(successes, report.transcripts));
  }
  double j_sum = 0.0;
  for (double j : js) j_sum += j;
  report.mean_j_star = j_sum / static_cast<double>(js.size());
  report.regret = regret_curve(transcripts, js);
  report.mean_regret = report.regret.back();
  if (report.episodes >= 3) report.delta = delta_states(transcripts);
  return report;
}

void compare_to_baseline(EvalReport& report, const EvalReport& baseline) {
  if (report.env_id != baseline.env_id || report.episodes != baseline.episodes) {
    throw InputError("baseline covers a different environment or episode count");
  }
  report.baseline_success_rate = baseline.success_rate;
  std::vector<double> delta;
  for (int e = 0; e < report.episodes; ++e) delta.push_back(report.success_rate[e] - baseline.success_rate[e]);
  report.delta_vs_baseline = delta;
}

nlohmann::json to_json(const EvalReport& r) {
  using nlohmann::json;
  json intervals = json::array();
  for (const auto& i : r.success_interval) intervals.push_back({i.low, i.high});
  json j = {{"env_id", r.env_id},
            {"episodes", r.episodes},
            {"instances", r.instances},
            {"rollouts", r.rollouts},
            {"transcripts", r.transcripts},
            {"truncated", r.truncated},
            {"success_rate", r.success_rate},
            {"success_interval", intervals},
            {"mean_j_star", r.mean_j_star},
            {"regret", r.regret},
            {"mean_regret", r.mean_regret},
            {"total_successes", r.total_successes}};
  if (r.delta) {
    const auto cond = [](const ConditionalMean& m) {
      return json{{"mean", m.mean ? json(*m.mean) : json(nullptr)}, {"count", m.count}};
    };
    j["delta_states"] = {{"ep2_given_f1", cond(r.delta->ep2_given_f1)},
                         {"ep3_given_f12", cond(r.delta->ep3_given_f12)}};
  }
  if (r.baseline_success_rate) j["baseline_success_rate"] = *r.baseline_success_rate;
  if (r.delta_vs_baseline) j["delta_vs_baseline"] = *r.delta_vs_baseline;
  return j;
}

std::string to_csv(std::span<const EvalReport> reports) {
  bool with_baseline = false;
  for (const auto& r : reports) with_baseline = with_baseline || r.delta_vs_baseline.has_value();
  std::string out = "env_id,episode,success_rate,ci_low,ci_high";
  if (with_baseline) out += ",baseline_rate,delta";
  out += "\n";
  char buf[160];
  for (const auto& r : reports) {
    for (int e = 0; e < r.episodes; ++e) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.6f,%.6f", r.env_id.c_str(), e + 1, r.success_rate[e],
                    r.success_interval[e].low, r.success_interval[e].high);
      out += buf;
      if (with_baseline) {
        if (r.delta_vs_baseline) {
          std::snprintf(buf, sizeof buf, ",%.6f,%.6f", (*r.baseline_success_rate)[e], (*r.delta_vs_baseline)[e]);
          out += buf;
        } else {
          out += ",,";
        }
      }
      out += "\n";
    }
  }
  return out;
}

std::string format_episode_row(const EvalReport& report, int episode) {
  if (episode < 1 || episode > report.episodes) throw InputError("episode out of range");
  std::string out = "Ep " + std::to_string(episode) + " Success " + fixed2(report.success_rate[episode - 1]);
  if (report.delta_vs_baseline) {
    out += "  \xCE\x94 vs. Base " + fixed2((*report.delta_vs_baseline)[episode - 1], true);
  }
  return out;
}

}  // namespace icrl
