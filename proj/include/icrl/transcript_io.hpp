#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "icrl/task.hpp"

namespace icrl {

nlohmann::json task_to_json(const TaskInstance& task);
TaskInstance task_from_json(const nlohmann::json& j);

nlohmann::json step_to_json(const StepRecord& step);
StepRecord step_from_json(const nlohmann::json& j);

/// Header line with the task and run summary, then one line per step.
std::string to_jsonl(const Transcript& transcript);
Transcript from_jsonl(std::istream& in);
Transcript from_jsonl(const std::string& text);

void write_transcript(const std::filesystem::path& path, const Transcript& transcript);
Transcript read_transcript(const std::filesystem::path& path);

}  // namespace icrl
