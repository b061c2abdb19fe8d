#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "icrl/environment.hpp"
#include "icrl/rng.hpp"

namespace icrl {

enum class RpsMove { kRock, kPaper, kScissors };
enum class RoundResult { kWin, kLose, kTie };

std::string_view to_string(RpsMove m);
std::optional<RpsMove> rps_move_from_string(std::string_view s);

RoundResult rps_round(RpsMove player, RpsMove opponent);

/// The move that beats `m`.
RpsMove rps_counter(RpsMove m);

class RpsEnv final : public Environment {
 public:
  RpsEnv(std::array<double, 3> opponent, std::uint64_t seed, int horizon)
      : Environment(horizon), opponent_(opponent), seed_(seed), rng_(seed) {}

  EnvId id() const override { return EnvId::kRps; }
  std::unique_ptr<Environment> clone() const override { return std::make_unique<RpsEnv>(*this); }

  /// Hidden opponent probabilities for (rock, paper, scissors).
  const std::array<double, 3>& opponent() const { return opponent_; }
  int wins() const { return wins_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;
  StepOutcome on_invalid(std::string message) override;

 private:
  RpsMove sample_opponent();
  StepOutcome finish_if_last(StepOutcome out) const;

  std::array<double, 3> opponent_;
  std::uint64_t seed_;
  Rng rng_;
  int wins_ = 0;
  int losses_ = 0;
  int ties_ = 0;
};

/// Opponent distribution drawn uniformly from the probability simplex.
std::array<double, 3> sample_rps_opponent(std::uint64_t seed);

}  // namespace icrl
