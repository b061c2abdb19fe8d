#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "icrl/agents.hpp"
#include "icrl/errors.hpp"
#include "icrl/protocol.hpp"
#include "icrl/transcript_io.hpp"
#include "reference/manual_protocol.hpp"

using namespace icrl;

namespace {

std::string golden_path(EnvId id) {
  return std::string(ICRL_TEST_DATA_DIR) + "/transcripts/" + std::string(to_string(id)) + ".jsonl";
}

Transcript scripted_run(const ref::GoldenCase& c) {
  auto agent = ScriptedAgent::same_every_episode(c.script);
  return run_task(make_task(c.env, c.seed), agent);
}

}  // namespace

TEST_CASE("golden transcripts match the hand-rolled loop and the frozen files") {
  const bool update = std::getenv("ICRL_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : ref::golden_cases()) {
    CAPTURE(to_string(c.env));
    const Transcript got = scripted_run(c);
    const Transcript manual = ref::manual_run(make_task(c.env, c.seed), c.script);
    CHECK(got == manual);
    const std::string text = to_jsonl(got);
    if (update) {
      std::filesystem::create_directories(std::filesystem::path(golden_path(c.env)).parent_path());
      std::ofstream(golden_path(c.env), std::ios::binary) << text;
    }
    std::ifstream in(golden_path(c.env), std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == text);
  }
}

TEST_CASE("runs are deterministic given the task and agent seed") {
  for (EnvId id : benchmark_envs()) {
    const TaskInstance task = make_task(id, 12);
    RandomAgent a(id, 5);
    RandomAgent b(id, 5);
    CHECK(to_jsonl(run_task(task, a)) == to_jsonl(run_task(task, b)));
  }
}

TEST_CASE("episode markers and structure") {
  const auto& c = ref::golden_cases()[1];
  const Transcript t = scripted_run(c);
  validate(t);
  int total = 0;
  for (int len : t.episode_lengths) {
    CHECK(len <= t.task.horizon);
    total += len;
  }
  CHECK(total == static_cast<int>(t.steps.size()));
  for (const auto& s : t.steps) {
    CHECK((s.step_index == 0) == (s.observation.rfind("New episode begins. ", 0) == 0));
    if (s.step_index == t.task.horizon - 1 && !s.terminal) {
      CHECK(s.next_observation.ends_with(" The episode has ended because the step limit was reached."));
    }
  }
}

TEST_CASE("step limit notice is appended only on a non-terminal last step") {
  TaskInstance task = make_task(EnvId::kMastermind, 0);
  const Code secret = generate_mastermind_secret(0);
  auto agent = ScriptedAgent::same_every_episode({"6 6 6", "6 6 6", format_code(secret)});
  const Transcript t = run_task(task, agent);
  for (const auto& s : t.steps) {
    if (s.step_index == 2) {
      CHECK(s.terminal);
      CHECK(s.success);
      CHECK(s.next_observation.find("step limit") == std::string::npos);
    }
  }
  CHECK(trajectory_reward(t) == 3);
}

TEST_CASE("trajectory reward, returns and regret") {
  TaskInstance task = make_task(EnvId::kMastermind, 0);
  const Code secret = generate_mastermind_secret(0);
  // Fail episode 1, solve 2 and 3.
  ScriptedAgent agent({{"6 6 6"}, {format_code(secret)}});
  const Transcript t = run_task(task, agent);
  CHECK(episode_returns(t) == std::vector<double>{0.0, 1.0, 1.0});
  CHECK(trajectory_reward(t) == 2);
  const auto g = episode_returns(t);
  CHECK(in_context_regret(1.0, g) == doctest::Approx(1.0));
  const std::vector<double> all{1.0, 1.0, 1.0};
  CHECK(in_context_regret(1.0, all) == doctest::Approx(0.0));
}

TEST_CASE("budget truncation") {
  const TaskInstance task = make_task(EnvId::kWordle, 1);
  auto agent = ScriptedAgent::same_every_episode({"CRANE"});
  Budget steps;
  steps.max_steps = 4;
  const Transcript t = run_task(task, agent, steps);
  CHECK(t.truncated);
  CHECK(t.steps.size() == 4);
  CHECK(t.episode_lengths == std::vector<int>{4});
  CHECK(trajectory_reward(t, true) == 0);

  Budget chars;
  chars.max_chars = 3000;
  const Transcript c = run_task(task, agent, chars);
  CHECK(c.truncated);
  CHECK(c.steps.size() < 30);

  Budget tokens;
  tokens.max_tokens = 10;
  CHECK_THROWS_AS(run_task(task, agent, tokens), ConfigError);
  tokens.count_tokens = [](std::span<const ChatMessage> m) { return m.size(); };
  const Transcript k = run_task(task, agent, tokens);
  CHECK(k.truncated);
  CHECK(k.steps.size() == 4);  // system + 4 * 2 messages + next user turn = 10 > 9
}

TEST_CASE("a successful truncated run scores zero only under the training convention") {
  TaskInstance task = make_task(EnvId::kMastermind, 0);
  auto agent = ScriptedAgent::same_every_episode({format_code(generate_mastermind_secret(0))});
  Budget b;
  b.max_steps = 2;
  const Transcript t = run_task(task, agent, b);
  CHECK(t.truncated);
  CHECK(trajectory_reward(t) == 2);
  CHECK(trajectory_reward(t, true) == 0);
}

TEST_CASE("parse_action examples") {
  CHECK(parse_action("I think \\boxed{up}") == "up");
  CHECK(parse_action("\\boxed{ up }") == "up");
  CHECK(parse_action("first \\boxed{left} then \\boxed{right}") == "right");
  CHECK(parse_action("\\box{1 4 6}") == "1 4 6");
  CHECK(parse_action("\\boxed{\\text{CRANE}}") == "CRANE");
  CHECK_FALSE(parse_action("no box here").has_value());
  CHECK_FALSE(parse_action("\\boxed{unclosed").has_value());
}

TEST_CASE("missing actions consume the step and are recorded empty") {
  class Mute final : public Agent {
   public:
    std::string act(std::span<const ChatMessage>) override { return "hmm"; }
  } mute;
  const Transcript t = run_task(make_task(EnvId::kMastermind, 2), mute);
  CHECK(t.steps.size() == 9);
  for (const auto& s : t.steps) {
    CHECK(s.action.empty());
    CHECK(s.next_observation.rfind("No action found.", 0) == 0);
  }
}

TEST_CASE("chat history round trip reproduces the transcript") {
  for (const auto& c : ref::golden_cases()) {
    const Transcript t = scripted_run(c);
    const auto chat = to_chat(t.steps, t.task.horizon);
    REQUIRE(chat.front().role == Role::kSystem);
    CHECK(chat.front().content == render_system_prompt());
    std::size_t i = 1;
    for (const auto& s : t.steps) {
      REQUIRE(i + 1 < chat.size());
      CHECK(chat[i].role == Role::kUser);
      CHECK(chat[i].content == s.observation);
      CHECK(chat[i + 1].role == Role::kAssistant);
      CHECK(chat[i + 1].content == s.raw_agent_output);
      i += 2;
      if (closes_episode(s, t.task.horizon)) {
        CHECK(chat[i].content == s.next_observation);
        ++i;
      }
    }
    CHECK(i == chat.size());
  }
}

TEST_CASE("jsonl round trip and validation") {
  for (const auto& c : ref::golden_cases()) {
    const Transcript t = scripted_run(c);
    CHECK(from_jsonl(to_jsonl(t)) == t);
  }
  CHECK_THROWS_AS(from_jsonl(std::string("{\"type\":\"step\"}\n")), InputError);
  Transcript broken = scripted_run(ref::golden_cases()[0]);
  broken.episode_lengths.push_back(99);
  CHECK_THROWS_AS(validate(broken), InputError);
}

TEST_CASE("invalid tasks are rejected") {
  TaskInstance task = make_task(EnvId::kMaze, 0);
  task.horizon = 0;
  CHECK_THROWS_AS(validate(task), InputError);
  task = make_task(EnvId::kMaze, 0);
  task.params = WordleParams{};
  CHECK_THROWS_AS(validate(task), InputError);
}
