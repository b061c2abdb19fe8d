#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "icrl/config.hpp"
#include "icrl/grpo.hpp"

namespace icrl {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitTransport = 3,
  kExitInternal = 4,
};

/// Runs every task x rollout, writes transcripts, report.json, report.csv and
/// config.resolved.json under config.out.
int cmd_eval(const RunConfig& config, std::ostream& log);

struct OracleOptions {
  EnvId env = EnvId::kMastermind;
  int instances = 256;
  std::uint64_t seed = 0;
  bool reveal_map = false;
  int parallel = 1;
  std::string out;  // optional transcript/report directory
};

/// Runs the Maze or Mastermind oracle through the protocol; prints the
/// per-episode curve as JSON to `out`.
int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& log);

/// Report over a transcript directory, optionally against a baseline directory.
int cmd_report(const std::filesystem::path& transcripts,
               const std::optional<std::filesystem::path>& baseline,
               const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
               std::ostream& log);

int cmd_train_toy(const ToyTrainConfig& config, const std::optional<std::filesystem::path>& csv,
                  std::ostream& out);

ToyTrainConfig toy_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ToyTrainConfig& config);

}  // namespace icrl
