#include "icrl/transcript_io.hpp"

#include <fstream>
#include <sstream>

#include "icrl/errors.hpp"

namespace icrl {

using nlohmann::json;

json task_to_json(const TaskInstance& task) {
  return {{"env_id", std::string(to_string(task.env_id))},
          {"seed", task.seed},
          {"horizon", task.horizon},
          {"episodes", task.episodes},
          {"params", params_to_json(task.params)}};
}

TaskInstance task_from_json(const json& j) {
  try {
    TaskInstance task;
    task.env_id = env_id_from_string(j.at("env_id").get<std::string>());
    task.seed = j.at("seed").get<std::uint64_t>();
    task.horizon = j.at("horizon").get<int>();
    task.episodes = j.at("episodes").get<int>();
    task.params = params_from_json(task.env_id, j.value("params", json::object()));
    validate(task);
    return task;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad task record: ") + e.what());
  }
}

json step_to_json(const StepRecord& s) {
  return {{"episode_index", s.episode_index},
          {"step_index", s.step_index},
          {"observation", s.observation},
          {"action", s.action},
          {"raw_agent_output", s.raw_agent_output},
          {"reward", s.reward},
          {"terminal", s.terminal},
          {"success", s.success},
          {"next_observation", s.next_observation}};
}

StepRecord step_from_json(const json& j) {
  try {
    StepRecord s;
    s.episode_index = j.at("episode_index").get<int>();
    s.step_index = j.at("step_index").get<int>();
    s.observation = j.at("observation").get<std::string>();
    s.action = j.at("action").get<std::string>();
    s.raw_agent_output = j.at("raw_agent_output").get<std::string>();
    s.reward = j.at("reward").get<double>();
    s.terminal = j.at("terminal").get<bool>();
    s.success = j.at("success").get<bool>();
    s.next_observation = j.value("next_observation", std::string());
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad step record: ") + e.what());
  }
}

std::string to_jsonl(const Transcript& t) {
  json header = task_to_json(t.task);
  header["type"] = "task";
  header["truncated"] = t.truncated;
  header["episode_lengths"] = t.episode_lengths;
  std::string out = header.dump() + "\n";
  for (const auto& s : t.steps) {
    json line = step_to_json(s);
    line["type"] = "step";
    out += line.dump() + "\n";
  }
  return out;
}

Transcript from_jsonl(std::istream& in) {
  Transcript t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw InputError(std::string("bad transcript line: ") + e.what());
    }
    const std::string type = j.value("type", std::string());
    if (type == "task") {
      if (have_header) throw InputError("transcript has two task headers");
      t.task = task_from_json(j);
      t.truncated = j.value("truncated", false);
      t.episode_lengths = j.value("episode_lengths", std::vector<int>{});
      have_header = true;
    } else if (type == "step") {
      if (!have_header) throw InputError("step before the task header");
      t.steps.push_back(step_from_json(j));
    } else {
      throw InputError("unknown transcript record type '" + type + "'");
    }
  }
  if (!have_header) throw InputError("transcript has no task header");
  validate(t);
  return t;
}

Transcript from_jsonl(const std::string& text) {
  std::istringstream in(text);
  return from_jsonl(in);
}

void write_transcript(const std::filesystem::path& path, const Transcript& transcript) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << to_jsonl(transcript);
}

Transcript read_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  return from_jsonl(in);
}

}  // namespace icrl
