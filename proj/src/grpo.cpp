#include "icrl/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "icrl/errors.hpp"

namespace icrl {

std::vector<double> group_advantages(std::span<const double> rewards) {
  if (rewards.empty()) throw InputError("advantages need at least one reward");
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(rewards.size());
  std::vector<double> out;
  out.reserve(rewards.size());
  for (double r : rewards) out.push_back(r - mean);
  return out;
}

void validate(const GroupBatch& batch) {
  if (batch.rewards.empty()) throw InputError("empty group");
  if (batch.logp_old.size() != batch.size() || batch.logp_new.size() != batch.size()) {
    throw InputError("one log-probability list per trajectory is required");
  }
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (batch.logp_old[k].size() != batch.logp_new[k].size()) {
      throw InputError("old and new log-probability lists differ in length");
    }
    for (std::size_t t = 0; t < batch.logp_old[k].size(); ++t) {
      if (!std::isfinite(batch.logp_old[k][t]) || !std::isfinite(batch.logp_new[k][t])) {
        throw NumericError("non-finite log-probability");
      }
    }
  }
}

namespace {

// Calls f(k, t, unclipped, clipped, ratio, advantage) for every term.
template <typename F>
void for_each_term(const GroupBatch& batch, const ClipConfig& clip, F&& f) {
  validate(batch);
  const auto adv = group_advantages(batch.rewards);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    for (std::size_t t = 0; t < batch.logp_new[k].size(); ++t) {
      const double ratio = std::exp(batch.logp_new[k][t] - batch.logp_old[k][t]);
      if (!std::isfinite(ratio)) throw NumericError("importance ratio overflowed");
      const double bounded = std::clamp(ratio, 1.0 - clip.eps_low, 1.0 + clip.eps_high);
      f(k, t, ratio * adv[k], bounded * adv[k], ratio, adv[k]);
    }
  }
}

}  // namespace

double clipped_surrogate(const GroupBatch& batch, const ClipConfig& clip) {
  double total = 0.0;
  for_each_term(batch, clip, [&](std::size_t, std::size_t, double unclipped, double clipped, double, double) {
    total += std::min(unclipped, clipped);
  });
  return total / static_cast<double>(batch.size());
}

std::vector<std::vector<double>> clipped_surrogate_grad(const GroupBatch& batch, const ClipConfig& clip) {
  std::vector<std::vector<double>> grad;
  for (const auto& row : batch.logp_new) grad.emplace_back(row.size(), 0.0);
  const double inv_k = 1.0 / static_cast<double>(batch.size());
  for_each_term(batch, clip,
                [&](std::size_t k, std::size_t t, double unclipped, double clipped, double ratio, double adv) {
                  if (unclipped <= clipped) grad[k][t] = ratio * adv * inv_k;
                });
  return grad;
}

double action_logprob(std::span<const double> token_logprobs) {
  double sum = 0.0;
  for (double x : token_logprobs) sum += x;
  return sum;
}

int SoftmaxTablePolicy::context(const std::string& key) {
  auto [it, inserted] = index_.try_emplace(key, static_cast<int>(logits_.size()));
  if (inserted) logits_.emplace_back(num_actions_, 0.0);
  return it->second;
}

std::vector<double> SoftmaxTablePolicy::probabilities(int context) const {
  const auto& row = logits_.at(context);
  const double top = *std::max_element(row.begin(), row.end());
  std::vector<double> p(row.size());
  double z = 0.0;
  for (std::size_t a = 0; a < row.size(); ++a) z += p[a] = std::exp(row[a] - top);
  for (double& x : p) x /= z;
  return p;
}

double SoftmaxTablePolicy::log_prob(int context, int action) const {
  const auto& row = logits_.at(context);
  const double top = *std::max_element(row.begin(), row.end());
  double z = 0.0;
  for (double l : row) z += std::exp(l - top);
  return row.at(action) - top - std::log(z);
}

std::string TablePolicyAgent::history_key(std::span<const ChatMessage> history) {
  std::string key;
  for (const auto& m : history) {
    if (m.role != Role::kUser) continue;
    key += m.content;
    key += '\x1f';
  }
  return key;
}

std::string TablePolicyAgent::act(std::span<const ChatMessage> history) {
  const int ctx = policy_.context(history_key(history));
  const auto p = policy_.probabilities(ctx);
  const double u = rng_.uniform();
  int action = static_cast<int>(p.size()) - 1;
  double acc = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    acc += p[a];
    if (u < acc) {
      action = static_cast<int>(a);
      break;
    }
  }
  decisions_.push_back({ctx, action, policy_.log_prob(ctx, action)});
  return boxed(names_.at(action));
}

std::vector<Decision> TablePolicyAgent::take_decisions() { return std::exchange(decisions_, {}); }

namespace {

const std::vector<std::string> kArmNames = {"0", "1"};

TaskInstance bandit_task(int good_arm, int episodes) {
  TaskInstance task = make_task(EnvId::kTwoArmedBandit, static_cast<std::uint64_t>(good_arm));
  task.episodes = episodes;
  task.params = BanditParams{good_arm};
  return task;
}

// Plays a fixed arm sequence and accumulates its probability under the policy.
class EnumerationAgent final : public Agent {
 public:
  EnumerationAgent(SoftmaxTablePolicy& policy, std::vector<int> arms) : policy_(policy), arms_(std::move(arms)) {}

  std::string act(std::span<const ChatMessage> history) override {
    const int a = arms_.at(next_++);
    log_prob_ += policy_.log_prob(policy_.context(TablePolicyAgent::history_key(history)), a);
    return boxed(kArmNames[a]);
  }
  double probability() const { return std::exp(log_prob_); }

 private:
  SoftmaxTablePolicy& policy_;
  std::vector<int> arms_;
  std::size_t next_ = 0;
  double log_prob_ = 0.0;
};

}  // namespace

BanditEvaluation evaluate_bandit_policy(SoftmaxTablePolicy& policy, int episodes) {
  if (policy.num_actions() != 2) throw InputError("bandit policy needs two actions");
  BanditEvaluation eval;
  eval.episode_success.assign(episodes, 0.0);
  for (int good = 0; good < 2; ++good) {
    const TaskInstance task = bandit_task(good, episodes);
    for (int mask = 0; mask < (1 << episodes); ++mask) {
      std::vector<int> arms;
      for (int e = 0; e < episodes; ++e) arms.push_back((mask >> e) & 1);
      EnumerationAgent agent(policy, arms);
      const Transcript t = run_task(task, agent);
      const double weight = 0.5 * agent.probability();
      const auto g = episode_returns(t);
      for (int e = 0; e < episodes; ++e) eval.episode_success[e] += weight * g[e];
      eval.expected_reward += weight * trajectory_reward(t);
    }
  }
  return eval;
}

std::vector<CurvePoint> toy_meta_train(const ToyTrainConfig& config, SoftmaxTablePolicy& policy) {
  if (config.group_size < 1 || config.batch_trajectories < config.group_size || config.steps < 0 ||
      config.inner_epochs < 1 || config.episodes < 1 || !(config.learning_rate >= 0.0)) {
    throw ConfigError("invalid toy training configuration");
  }
  Rng task_rng(config.seed, "toy-tasks");
  TablePolicyAgent agent(policy, kArmNames, config.seed);
  const int groups = config.batch_trajectories / config.group_size;
  std::vector<CurvePoint> curve;

  const auto snapshot = [&](int step, double batch_mean) {
    const auto eval = evaluate_bandit_policy(policy, config.episodes);
    CurvePoint p;
    p.step = step;
    p.expected_reward = eval.expected_reward;
    p.batch_mean_reward = batch_mean;
    p.episode1_success = eval.episode_success.at(0);
    p.episode2_success = config.episodes > 1 ? eval.episode_success.at(1) : 0.0;
    return p;
  };

  for (int step = 0; step < config.steps; ++step) {
    std::vector<GroupBatch> batches(groups);
    std::vector<std::vector<std::vector<Decision>>> decisions(groups);
    double reward_sum = 0.0;
    for (int g = 0; g < groups; ++g) {
      const TaskInstance task = bandit_task(static_cast<int>(task_rng.below(2)), config.episodes);
      for (int k = 0; k < config.group_size; ++k) {
        const Transcript t = run_task(task, agent);
        auto taken = agent.take_decisions();
        std::vector<double> old;
        for (const auto& d : taken) old.push_back(d.logp);
        batches[g].rewards.push_back(trajectory_reward(t, true));
        batches[g].logp_old.push_back(old);
        batches[g].logp_new.push_back(old);
        decisions[g].push_back(std::move(taken));
        reward_sum += batches[g].rewards.back();
      }
    }
    curve.push_back(snapshot(step, reward_sum / (groups * config.group_size)));

    for (int epoch = 0; epoch < config.inner_epochs; ++epoch) {
      std::vector<std::vector<double>> grad(policy.logits().size(),
                                            std::vector<double>(policy.num_actions(), 0.0));
      for (int g = 0; g < groups; ++g) {
        for (std::size_t k = 0; k < decisions[g].size(); ++k) {
          for (std::size_t t = 0; t < decisions[g][k].size(); ++t) {
            const auto& d = decisions[g][k][t];
            batches[g].logp_new[k][t] = policy.log_prob(d.context, d.action);
          }
        }
        const auto dlogp = clipped_surrogate_grad(batches[g], config.clip);
        for (std::size_t k = 0; k < decisions[g].size(); ++k) {
          for (std::size_t t = 0; t < decisions[g][k].size(); ++t) {
            const auto& d = decisions[g][k][t];
            const auto p = policy.probabilities(d.context);
            for (int b = 0; b < policy.num_actions(); ++b) {
              grad[d.context][b] += dlogp[k][t] * ((b == d.action ? 1.0 : 0.0) - p[b]) / groups;
            }
          }
        }
      }
      for (std::size_t c = 0; c < grad.size(); ++c) {
        for (int b = 0; b < policy.num_actions(); ++b) {
          double& logit = policy.logits()[c][b];
          logit += config.learning_rate * grad[c][b];
          if (!std::isfinite(logit)) throw NumericError("toy training diverged at step " + std::to_string(step));
        }
      }
    }
  }
  curve.push_back(snapshot(config.steps, curve.empty() ? 0.0 : curve.back().batch_mean_reward));
  return curve;
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
  std::string out = "step,expected_reward,batch_mean_reward,episode1_success,episode2_success\n";
  char buf[160];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f,%.6f\n", p.step, p.expected_reward, p.batch_mean_reward,
                  p.episode1_success, p.episode2_success);
    out += buf;
  }
  return out;
}

}  // namespace icrl
