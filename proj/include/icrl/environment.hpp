#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "icrl/task.hpp"

namespace icrl {

struct StepOutcome {
  std::string observation;
  double reward = 0.0;
  bool terminal = false;
  bool success = false;
  bool valid = true;
};

/// One seeded game. Hidden parameters are fixed at construction; reset()
/// starts a new episode of the same task.
class Environment {
 public:
  explicit Environment(int horizon) : horizon_(horizon) {}
  virtual ~Environment() = default;
  Environment(const Environment&) = default;
  Environment& operator=(const Environment&) = default;

  virtual EnvId id() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  /// Starts the next episode and returns its opening observation.
  std::string reset();

  /// Applies one action. Actions the grammar rejects consume the step,
  /// leave the state unchanged and explain themselves in the observation.
  StepOutcome step(std::string_view action);

  /// Consumes a step for output that carried no action at all.
  StepOutcome reject(std::string_view reason);

  /// Canonical spelling of an action (case, whitespace) for this game.
  virtual std::string normalize_action(std::string_view action) const;

  int horizon() const { return horizon_; }
  int steps_taken() const { return steps_taken_; }
  int episode() const { return episode_; }

 protected:
  virtual std::string on_reset() = 0;
  virtual StepOutcome on_step(std::string_view action) = 0;
  /// Observation for an invalid action; state must not change.
  virtual StepOutcome on_invalid(std::string message);

  static StepOutcome invalid(std::string observation) {
    StepOutcome out;
    out.observation = std::move(observation);
    out.valid = false;
    return out;
  }

 private:
  int horizon_;
  int steps_taken_ = 0;
  int episode_ = 0;
};

/// Builds the environment for a task; hidden state is a pure function of
/// (env_id, seed, params). Throws GenerationError on infeasible params.
std::unique_ptr<Environment> make_environment(const TaskInstance& task);

}  // namespace icrl
