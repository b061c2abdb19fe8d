#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "icrl/environment.hpp"

namespace icrl {

/// Rank 1 = ace, 2..10 pips, 11/12/13 = J/Q/K.
using Card = int;

std::string card_label(Card c);

/// Aces count 11 while that keeps the total at or under 21, otherwise 1.
int blackjack_hand_value(std::span<const Card> cards);

struct BlackjackDeal {
  std::array<Card, 2> player;
  Card dealer_up = 0;
  Card dealer_hole = 0;
  std::vector<Card> pile;  // draw pile, addressed by index in "hit <index>"
  bool operator==(const BlackjackDeal&) const = default;
};

/// Seeded shuffle of a 52-card deck: two cards to the player, two to the dealer, rest is the pile.
BlackjackDeal deal_blackjack(std::uint64_t seed);

class BlackjackEnv final : public Environment {
 public:
  BlackjackEnv(BlackjackDeal deal, int horizon) : Environment(horizon), deal_(std::move(deal)) {}

  EnvId id() const override { return EnvId::kBlackjack; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<BlackjackEnv>(*this);
  }

  const BlackjackDeal& deal() const { return deal_; }
  const std::vector<Card>& hand() const { return hand_; }

 protected:
  std::string on_reset() override;
  StepOutcome on_step(std::string_view action) override;
  StepOutcome on_invalid(std::string message) override;

 private:
  std::string table() const;

  BlackjackDeal deal_;
  std::vector<Card> hand_;
  std::vector<bool> drawn_;
};

}  // namespace icrl
