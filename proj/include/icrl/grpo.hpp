#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "icrl/protocol.hpp"
#include "icrl/rng.hpp"

namespace icrl {

/// Reward minus the group mean. No standard-deviation scaling.
std::vector<double> group_advantages(std::span<const double> rewards);

struct ClipConfig {
  double eps_low = 0.2;
  double eps_high = 0.28;
};

/// K trajectories of one task: trajectory rewards and, per trajectory, the
/// log-probability of each recorded action under the old and current policy.
struct GroupBatch {
  std::vector<double> rewards;
  std::vector<std::vector<double>> logp_old;
  std::vector<std::vector<double>> logp_new;

  std::size_t size() const { return rewards.size(); }
};

/// Throws InputError when the per-trajectory lists do not line up.
void validate(const GroupBatch& batch);

/// (1/K) sum_k sum_t min(r A, clip(r, 1 - eps_low, 1 + eps_high) A),
/// r = exp(logp_new - logp_old). To be maximized. Throws NumericError on
/// non-finite log-probabilities.
double clipped_surrogate(const GroupBatch& batch, const ClipConfig& clip);

/// d(clipped_surrogate)/d(logp_new), shaped like batch.logp_new. Terms whose
/// clipped branch is active contribute zero.
std::vector<std::vector<double>> clipped_surrogate_grad(const GroupBatch& batch,
                                                        const ClipConfig& clip);

/// For actions modeled as token sequences: an action's log-probability is
/// the sum of its token log-probabilities, so each token receives the
/// action's gradient unchanged.
double action_logprob(std::span<const double> token_logprobs);

/// Softmax over a fixed action set, one logit row per distinct history.
class SoftmaxTablePolicy {
 public:
  explicit SoftmaxTablePolicy(int num_actions) : num_actions_(num_actions) {}

  int num_actions() const { return num_actions_; }
  std::size_t num_contexts() const { return logits_.size(); }

  /// Row index for a history key, created with zero logits on first sight.
  int context(const std::string& key);
  std::vector<double> probabilities(int context) const;
  double log_prob(int context, int action) const;

  std::vector<std::vector<double>>& logits() { return logits_; }
  const std::vector<std::vector<double>>& logits() const { return logits_; }

 private:
  int num_actions_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<double>> logits_;
};

/// One sampled decision: which row, which action, and its log-probability at sampling time.
struct Decision {
  int context = 0;
  int action = 0;
  double logp = 0.0;
};

/// Samples from a SoftmaxTablePolicy keyed on the concatenated user turns.
class TablePolicyAgent final : public Agent {
 public:
  TablePolicyAgent(SoftmaxTablePolicy& policy, std::vector<std::string> action_names,
                   std::uint64_t seed)
      : policy_(policy), names_(std::move(action_names)), rng_(seed, "table-policy") {}

  std::string act(std::span<const ChatMessage> history) override;

  /// Decisions since the last take_decisions().
  std::vector<Decision> take_decisions();

  static std::string history_key(std::span<const ChatMessage> history);

 private:
  SoftmaxTablePolicy& policy_;
  std::vector<std::string> names_;
  Rng rng_;
  std::vector<Decision> decisions_;
};

struct ToyTrainConfig {
  int group_size = 4;            // K
  int batch_trajectories = 64;
  int steps = 100;
  double learning_rate = 0.5;
  int inner_epochs = 4;          // ascent steps per sampled batch
  ClipConfig clip;
  std::uint64_t seed = 7;
  int episodes = 2;
};

struct CurvePoint {
  int step = 0;
  double expected_reward = 0.0;    // exact, by enumeration, before the update
  double batch_mean_reward = 0.0;  // sampled batch
  double episode1_success = 0.0;
  double episode2_success = 0.0;
};

struct BanditEvaluation {
  double expected_reward = 0.0;
  std::vector<double> episode_success;
};

/// Exact evaluation of a table policy on the two-armed task family by
/// enumerating every task and action sequence through the protocol.
BanditEvaluation evaluate_bandit_policy(SoftmaxTablePolicy& policy, int episodes);

/// GRPO on the two-armed task-identity bandit. Returns one point per
/// optimization step plus a final point; `policy` holds the trained table.
std::vector<CurvePoint> toy_meta_train(const ToyTrainConfig& config, SoftmaxTablePolicy& policy);

std::string curve_to_csv(std::span<const CurvePoint> curve);

}  // namespace icrl
