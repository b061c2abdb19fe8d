#include "icrl/envs/rps.hpp"

#include <algorithm>
#include <cmath>

#include "icrl/prompts.hpp"
#include "icrl/text.hpp"

namespace icrl {

std::string_view to_string(RpsMove m) {
  switch (m) {
    case RpsMove::kRock: return "rock";
    case RpsMove::kPaper: return "paper";
    case RpsMove::kScissors: return "scissors";
  }
  return "rock";
}

std::optional<RpsMove> rps_move_from_string(std::string_view s) {
  const std::string m = to_lower(trim(s));
  if (m == "rock" || m == "r") return RpsMove::kRock;
  if (m == "paper" || m == "p") return RpsMove::kPaper;
  if (m == "scissors" || m == "scissor" || m == "s") return RpsMove::kScissors;
  return std::nullopt;
}

RpsMove rps_counter(RpsMove m) {
  switch (m) {
    case RpsMove::kRock: return RpsMove::kPaper;
    case RpsMove::kPaper: return RpsMove::kScissors;
    case RpsMove::kScissors: return RpsMove::kRock;
  }
  return RpsMove::kRock;
}

RoundResult rps_round(RpsMove player, RpsMove opponent) {
  if (player == opponent) return RoundResult::kTie;
  return rps_counter(opponent) == player ? RoundResult::kWin : RoundResult::kLose;
}

std::array<double, 3> sample_rps_opponent(std::uint64_t seed) {
  Rng rng(seed, "rps-opponent");
  std::array<double, 3> e{};
  double sum = 0.0;
  for (double& x : e) {
    x = -std::log1p(-rng.uniform());
    sum += x;
  }
  for (double& x : e) x /= sum;
  return e;
}

RpsMove RpsEnv::sample_opponent() {
  const double u = rng_.uniform();
  if (u < opponent_[0]) return RpsMove::kRock;
  if (u < opponent_[0] + opponent_[1]) return RpsMove::kPaper;
  return RpsMove::kScissors;
}

std::string RpsEnv::on_reset() {
  rng_ = Rng(seed_, "rps-episode-" + std::to_string(episode()));
  wins_ = losses_ = ties_ = 0;
  return game_rules(EnvId::kRps, horizon());
}

StepOutcome RpsEnv::finish_if_last(StepOutcome out) const {
  out.observation += " Score: " + std::to_string(wins_) + " wins, " + std::to_string(losses_) +
                     " losses, " + std::to_string(ties_) + " ties.";
  if (steps_taken() >= horizon()) {
    out.terminal = true;
    out.success = wins_ * 2 > horizon();
    out.observation += out.success ? " You won the majority of rounds!" : " You did not win the majority of rounds.";
  } else {
    out.observation += " Round " + std::to_string(steps_taken() + 1) + " of " +
                       std::to_string(horizon()) + ". Output your action within \\box{...}.";
  }
  return out;
}

StepOutcome RpsEnv::on_step(std::string_view action) {
  const auto move = rps_move_from_string(action);
  if (!move) {
    return on_invalid("Invalid action '" + std::string(action) + "'. Choose rock, paper or scissors.");
  }
  const RpsMove opp = sample_opponent();
  StepOutcome out;
  out.observation = "You played " + std::string(to_string(*move)) + ", the adversary played " +
                    std::string(to_string(opp)) + ".";
  switch (rps_round(*move, opp)) {
    case RoundResult::kWin:
      ++wins_;
      out.reward = 1.0;
      out.observation += " You win this round.";
      break;
    case RoundResult::kLose:
      ++losses_;
      out.reward = -1.0;
      out.observation += " You lose this round.";
      break;
    case RoundResult::kTie:
      ++ties_;
      out.observation += " This round is a tie.";
      break;
  }
  return finish_if_last(std::move(out));
}

StepOutcome RpsEnv::on_invalid(std::string message) {
  ++losses_;
  return finish_if_last(invalid(std::move(message)));
}

}  // namespace icrl
