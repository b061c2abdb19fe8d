#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icrl/task.hpp"

namespace icrl {

enum class Role { kSystem, kUser, kAssistant };
std::string_view to_string(Role r);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

/// The fixed system prompt shared by every game.
const std::string& render_system_prompt();

/// Rules text that opens each episode of a game, with the turn limit
/// spliced in. For Maze this is the opening sentence of its observation.
std::string game_rules(EnvId id, int horizon);

inline constexpr std::string_view kNewEpisodeMarker = "New episode begins.";
inline constexpr std::string_view kStepLimitNotice =
    "The episode has ended because the step limit was reached.";

/// Prefixes the episode marker onto an episode's first observation.
std::string mark_new_episode(std::string_view observation);

/// Content of the last complete \boxed{...} or \box{...} in `raw`, trimmed,
/// with a \text{} wrapper removed. nullopt when there is none.
std::optional<std::string> parse_action(std::string_view raw);

/// Chat history for a step prefix: the system prompt, then for each step the
/// observation (user) and raw output (assistant); a step that closes an
/// episode is followed by its closing observation (user).
std::vector<ChatMessage> to_chat(std::span<const StepRecord> steps, int horizon);

/// True for the last step of an episode: terminal, or the horizon was hit.
bool closes_episode(const StepRecord& step, int horizon);

/// Sum of message content lengths.
std::size_t history_chars(std::span<const ChatMessage> messages);

/// Wraps an action the way agents are asked to answer.
std::string boxed(std::string_view action);

}  // namespace icrl
