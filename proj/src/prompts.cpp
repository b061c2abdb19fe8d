#include "icrl/prompts.hpp"

#include <array>

#include "icrl/errors.hpp"
#include "icrl/text.hpp"

namespace icrl {
namespace {

constexpr std::string_view kSystemPrompt =
    R"(You are solving the same task across multiple episodes with a fixed total step budget. Each episode resets the environment but keeps the task identical. Leverage information gathered from earlier episodes to succeed faster. Respond with actions inside \\box{} each turn.)";

constexpr std::string_view kMinesweeperRules =
    R"(You are playing the Minesweeper game. The objective of the game is to reveal all cells that do not contain mines. To make a move, you can either reveal a cell or place a flag on a suspected mine location using one of the following commands:
- 'reveal': Reveal the contents of a specific cell.
- 'flag': Place or remove a flag on a specific cell to mark it as a potential mine.
To submit your move, type the command followed by the row and column in \\box{} .
For example:
- \\box{reveal 4 4} to reveal the cell in Row 4, Column 4.
- \\box{flag 2 2} to place or remove a flag on the cell in Row 2, Column 2.
The current board layout is shown below. Cells that are unrevealed are represented by a dot ('.'), revealed numbers show the count of adjacent mines, and flagged cells are marked with an 'F'.
Use logic and deduction to avoid revealing cells with mines! Be mindful not to choose revealed or flagged cells.)";

constexpr std::string_view kHangmanRules =
    R"(You are playing Hangman.
The objective of the game is to guess the 3-letter word by providing one letter guesses or the entire word.
The cells that need to be populated with letters are represented by '_'.
There are two ways you can answer. You can provide one letter guesses in the format of \\box{TOE}, or you can guess the entire word in the format of \\box{Y}.
If the given letter is in the word, it will be revealed in the grid.
If the given word is correct, you win.
As you play, the history of your choices will be appended below. Use the information to figure out the word and win.
Some rules:
1. You can only guess one letter/word at a time.
2. You have to win within {H} turns.)";

constexpr std::string_view kBlackjackRules =
    R"(You are an agent playing a simplified game of Blackjack against a dealer.

Game Objective:
Your goal is to choose actions that maximize your chance of winning against the dealer.

- The objective is to get a hand value as close to 21 as possible without exceeding 21.
- If your hand value exceeds 21, you bust and immediately lose.
- After you stand, the game ends and your hand is compared with the dealer's hand.

Card Values:
- Number cards (2–10): face value
- Face cards (J, Q, K): value 10
- Ace (A): value 1 or 11, chosen to give the highest possible hand value not exceeding 21

Dealer Rules:
- The dealer has exactly two cards.
- One dealer card is visible and the other is hidden.
- The dealer does not draw any additional cards.
- The dealer's hand value is computed using the same Ace rule as the player.

Initial Observation:
At the start of the episode, you observe:

1. Dealer’s hand:
   - One visible card and one hidden card
   - Example: Dealer cards: [4, ?]

2. Your hand:
   - A list of cards currently held
   - Example: Your cards: [10, 6]

3. Deck:
   - A list of remaining cards indexed by position
   - Unknown card identities are hidden
   - Example: Deck: [0: ?, 1: ?, 2: ?, 3: ?, 4: ?, ...]

Available Actions:
At each step, you must choose exactly one of the following actions:
- Hit: draw a specific card from the deck
  hit <card_index>

- Stand: stop drawing cards and end the game
  stand

Action Output Format:
You must output your action in exactly one line, using the following format:

- Hit example: \\box{hit 9}

- Stand example: \\box{stand}

Important constraints:
- Output only the boxed action.
- Do not include explanations, reasoning, or additional text.
- Do not output multiple actions.

Now Begin:
Given the current observation, decide your next action and output it in the required format.)";

constexpr std::string_view kRpsRules =
    R"(You are playing a multi-turn Rock-Paper-Scissors game against an adversary.
In each episode, at every turn, the adversary's action is sampled from a fixed (hidden) distribution determined by the seed.
Your objective is to choose the action that maximizes the probability of winning against this hidden distribution each turn.
Now let's start the game. Output your action within \\box{...}.)";

constexpr std::string_view kWordleRules =
    R"(You are playing Wordle.
You have to guess the secret 5-letter word within {H} turns.
After you enter your guess, I will say mark your guess as follows:
    - G (green): correct letter in the correct position
    - Y (yellow): letter exists in the word but in the wrong position
    - X (wrong): letter is not in the word
After thinking, format your final answer inside \\box{...}, for example, CRANE.
As you play, the history of your guesses will be appended below. Use the information to complete the game before you run out of guesses.)";

constexpr std::string_view kMastermindRules =
    R"(You are playing Mastermind.
You have to guess the secret 3 digit code within {H} turns.
The code consists of digits from 1 to 6 (inclusive).
Duplicate numbers are 'not allowed'.
After you enter your guess, I will say mark your guess with black and white pegs, where a black peg indicates a correct digit in the correct position, while a white peg indicates a correct digit in the wrong position.
After thinking, format your final answer inside \\box{...}, for example, \\box{1 4 6}.
As you play, the history of your guesses will be appended below. Use the information to complete the game before you run out of guesses.
Enter your first guess to start the game.)";

constexpr std::string_view kMazeRules =
    "You are a maze-solving agent. Your goal is to navigate from the START position to the GOAL "
    "position in the fewest turns possible.";

constexpr std::string_view kBanditRules =
    R"(There are two slot machines, arm 0 and arm 1. One of them always pays out and the other never does. Pull one arm per episode. Respond with \boxed{0} or \boxed{1}.)";

std::string splice_horizon(std::string_view text, int horizon) {
  std::string out(text);
  const auto pos = out.find("{H}");
  if (pos != std::string::npos) out.replace(pos, 3, std::to_string(horizon));
  return out;
}

constexpr std::array<std::string_view, 2> kBoxMarkers = {"\\boxed{", "\\box{"};
constexpr std::array<std::string_view, 3> kTextWrappers = {"\\text{", "\\mathrm{", "\\texttt{"};

// Index of the brace closing the one opened just before `open_end`, or npos.
std::size_t matching_brace(std::string_view s, std::size_t open_end) {
  int depth = 1;
  for (std::size_t i = open_end; i < s.size(); ++i) {
    if (s[i] == '{') {
      ++depth;
    } else if (s[i] == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

const std::string& render_system_prompt() {
  static const std::string prompt(kSystemPrompt);
  return prompt;
}

std::string game_rules(EnvId id, int horizon) {
  switch (id) {
    case EnvId::kMinesweeper: return std::string(kMinesweeperRules);
    case EnvId::kHangman: return splice_horizon(kHangmanRules, horizon);
    case EnvId::kBlackjack: return std::string(kBlackjackRules);
    case EnvId::kRps: return std::string(kRpsRules);
    case EnvId::kWordle: return splice_horizon(kWordleRules, horizon);
    case EnvId::kMastermind: return splice_horizon(kMastermindRules, horizon);
    case EnvId::kMaze: return std::string(kMazeRules);
    case EnvId::kTwoArmedBandit: return std::string(kBanditRules);
  }
  throw InputError("unknown environment id");
}

std::string mark_new_episode(std::string_view observation) {
  return std::string(kNewEpisodeMarker) + " " + std::string(observation);
}

std::optional<std::string> parse_action(std::string_view raw) {
  std::optional<std::string_view> last;
  std::size_t last_start = 0;
  for (const auto marker : kBoxMarkers) {
    for (std::size_t pos = raw.find(marker); pos != std::string_view::npos;
         pos = raw.find(marker, pos + 1)) {
      const std::size_t open_end = pos + marker.size();
      const std::size_t close = matching_brace(raw, open_end);
      if (close == std::string_view::npos) continue;
      if (!last || pos >= last_start) {
        last = raw.substr(open_end, close - open_end);
        last_start = pos;
      }
    }
  }
  if (!last) return std::nullopt;
  std::string_view content = trim(*last);
  for (const auto wrapper : kTextWrappers) {
    if (content.starts_with(wrapper) &&
        matching_brace(content, wrapper.size()) == content.size() - 1) {
      content = trim(content.substr(wrapper.size(), content.size() - wrapper.size() - 1));
      break;
    }
  }
  if (content.empty()) return std::nullopt;
  return std::string(content);
}

bool closes_episode(const StepRecord& step, int horizon) {
  return step.terminal || step.step_index + 1 >= horizon;
}

std::vector<ChatMessage> to_chat(std::span<const StepRecord> steps, int horizon) {
  std::vector<ChatMessage> out;
  out.reserve(2 * steps.size() + 4);
  out.push_back({Role::kSystem, render_system_prompt()});
  for (const auto& s : steps) {
    out.push_back({Role::kUser, s.observation});
    out.push_back({Role::kAssistant, s.raw_agent_output});
    if (closes_episode(s, horizon)) out.push_back({Role::kUser, s.next_observation});
  }
  return out;
}

std::size_t history_chars(std::span<const ChatMessage> messages) {
  std::size_t n = 0;
  for (const auto& m : messages) n += m.content.size();
  return n;
}

std::string boxed(std::string_view action) { return "\\boxed{" + std::string(action) + "}"; }

}  // namespace icrl
