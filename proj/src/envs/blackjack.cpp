#include "icrl/envs/blackjack.hpp"

#include <numeric>

#include "icrl/prompts.hpp"
#include "icrl/rng.hpp"
#include "icrl/text.hpp"

namespace icrl {

std::string card_label(Card c) {
  switch (c) {
    case 1: return "A";
    case 11: return "J";
    case 12: return "Q";
    case 13: return "K";
    default: return std::to_string(c);
  }
}

int blackjack_hand_value(std::span<const Card> cards) {
  int total = 0;
  int aces = 0;
  for (Card c : cards) {
    if (c == 1) {
      ++aces;
      total += 1;
    } else {
      total += c >= 10 ? 10 : c;
    }
  }
  if (aces > 0 && total + 10 <= 21) total += 10;
  return total;
}

BlackjackDeal deal_blackjack(std::uint64_t seed) {
  std::vector<Card> deck(52);
  for (int i = 0; i < 52; ++i) deck[i] = i % 13 + 1;
  Rng rng(seed, "blackjack");
  rng.shuffle(std::span<Card>(deck));
  BlackjackDeal deal;
  deal.player = {deck[0], deck[1]};
  deal.dealer_up = deck[2];
  deal.dealer_hole = deck[3];
  deal.pile.assign(deck.begin() + 4, deck.end());
  return deal;
}

namespace {

std::string hand_text(const std::vector<Card>& cards) {
  std::vector<std::string> labels;
  for (Card c : cards) labels.push_back(card_label(c));
  return "[" + join(labels, ", ") + "]";
}

}  // namespace

std::string BlackjackEnv::table() const {
  std::string deck;
  for (std::size_t i = 0; i < deal_.pile.size(); ++i) {
    if (drawn_[i]) continue;
    if (!deck.empty()) deck += ", ";
    deck += std::to_string(i) + ": ?";
  }
  return "Dealer cards: [" + card_label(deal_.dealer_up) + ", ?]\nYour cards: " + hand_text(hand_) +
         "\nDeck: [" + deck + "]";
}

std::string BlackjackEnv::on_reset() {
  hand_.assign(deal_.player.begin(), deal_.player.end());
  drawn_.assign(deal_.pile.size(), false);
  return game_rules(EnvId::kBlackjack, horizon()) + "\n\n" + table();
}

StepOutcome BlackjackEnv::on_step(std::string_view action) {
  const auto parts = tokens(to_lower(action));
  StepOutcome out;
  if (parts.size() == 1 && parts[0] == "stand") {
    const std::vector<Card> dealer = {deal_.dealer_up, deal_.dealer_hole};
    const int pv = blackjack_hand_value(hand_);
    const int dv = blackjack_hand_value(dealer);
    out.terminal = true;
    out.success = pv <= 21 && pv > dv;
    out.reward = out.success ? 1.0 : -1.0;
    out.observation = "You stand with " + std::to_string(pv) + ". Dealer reveals " + hand_text(dealer) +
                      " for " + std::to_string(dv) + ". " + (out.success ? "You win!" : "You lose.");
    return out;
  }
  int index = -1;
  if (parts.size() != 2 || parts[0] != "hit" || !parse_int(parts[1], index)) {
    return on_invalid("Invalid action '" + std::string(action) + "'. Use 'hit <card_index>' or 'stand'.");
  }
  if (index < 0 || index >= static_cast<int>(deal_.pile.size()) || drawn_[index]) {
    return on_invalid("Card " + std::to_string(index) + " is not in the deck.");
  }
  drawn_[index] = true;
  const Card card = deal_.pile[index];
  hand_.push_back(card);
  const int pv = blackjack_hand_value(hand_);
  out.observation = "You drew " + card_label(card) + " from position " + std::to_string(index) +
                    ". Your hand value is " + std::to_string(pv) + ".";
  if (pv > 21) {
    out.observation += " You bust and lose.";
    out.reward = -1.0;
    out.terminal = true;
    return out;
  }
  out.observation += "\n" + table();
  return out;
}

StepOutcome BlackjackEnv::on_invalid(std::string message) {
  return invalid(std::move(message) + "\n" + table());
}

}  // namespace icrl
