#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "icrl/commands.hpp"
#include "icrl/errors.hpp"

namespace {

int run_eval(const std::string& config_path, const std::string& out, int parallel,
             const std::optional<std::uint64_t>& seed_offset, const std::string& agent,
             const std::optional<std::size_t>& budget_chars) {
  try {
    icrl::RunConfig config = icrl::load_run_config(config_path);
    if (!out.empty()) config.out = out;
    if (parallel > 0) config.parallel = parallel;
    if (seed_offset) config.seed_offset = *seed_offset;
    if (!agent.empty()) {
      config.agent.kind = agent;
      config.agent = icrl::run_config_from_json(icrl::to_json(config)).agent;
    }
    if (budget_chars) config.budget_chars = *budget_chars;
    return icrl::cmd_eval(config, std::cerr);
  } catch (const icrl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return icrl::kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-episode in-context learning benchmark"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Run an agent over a suite of tasks");
  std::string config_path;
  std::string eval_out;
  int parallel = 0;
  std::optional<std::uint64_t> seed_offset;
  std::string agent;
  std::optional<std::size_t> budget_chars;
  eval->add_option("--config", config_path, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out, "Output directory (overrides the config)");
  eval->add_option("--parallel", parallel, "Concurrent tasks")->check(CLI::PositiveNumber);
  eval->add_option("--seed-offset", seed_offset, "Shift every instance seed");
  eval->add_option("--agent", agent, "Agent kind (overrides the config)");
  eval->add_option("--budget-chars", budget_chars, "Context budget in characters");

  auto* oracle = app.add_subcommand("oracle", "Run the maze or mastermind oracle");
  icrl::OracleOptions oracle_options;
  std::string oracle_env = "mastermind";
  oracle->add_option("--env", oracle_env, "maze or mastermind");
  oracle->add_option("--instances", oracle_options.instances, "Number of instances");
  oracle->add_option("--seed", oracle_options.seed, "First instance seed");
  oracle->add_flag("--reveal-map", oracle_options.reveal_map, "Maze oracle starts from the true map");
  oracle->add_option("--parallel", oracle_options.parallel, "Concurrent tasks")->check(CLI::PositiveNumber);
  oracle->add_option("--out", oracle_options.out, "Directory for transcripts and reports");

  auto* report = app.add_subcommand("report", "Summarize a transcript directory");
  std::string report_dir;
  std::string baseline_dir;
  std::string report_out;
  report->add_option("dir", report_dir, "Transcript directory")->required();
  report->add_option("--baseline", baseline_dir, "Baseline transcript directory");
  report->add_option("--out", report_out, "Write report.json and report.csv here");

  auto* toy = app.add_subcommand("train-toy", "GRPO on the two-armed task-identity bandit");
  std::string toy_config;
  std::string toy_csv;
  icrl::ToyTrainConfig toy_defaults;
  toy->add_option("--config", toy_config, "Training config (JSON)")->check(CLI::ExistingFile);
  toy->add_option("--csv", toy_csv, "Write the learning curve as CSV");
  toy->add_option("--steps", toy_defaults.steps, "Optimization steps");
  toy->add_option("--seed", toy_defaults.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? icrl::kExitOk : icrl::kExitConfig;
  }

  try {
    if (*eval) return run_eval(config_path, eval_out, parallel, seed_offset, agent, budget_chars);
    if (*oracle) {
      oracle_options.env = icrl::env_id_from_string(oracle_env);
      return icrl::cmd_oracle(oracle_options, std::cout, std::cerr);
    }
    if (*report) {
      std::optional<std::filesystem::path> baseline;
      std::optional<std::filesystem::path> out;
      if (!baseline_dir.empty()) baseline = baseline_dir;
      if (!report_out.empty()) out = report_out;
      return icrl::cmd_report(report_dir, baseline, out, std::cout, std::cerr);
    }
    if (*toy) {
      icrl::ToyTrainConfig config = toy_defaults;
      if (!toy_config.empty()) {
        std::ifstream in(toy_config);
        config = icrl::toy_config_from_json(nlohmann::json::parse(in));
      }
      std::optional<std::filesystem::path> csv;
      if (!toy_csv.empty()) csv = toy_csv;
      return icrl::cmd_train_toy(config, csv, std::cout);
    }
  } catch (const icrl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return icrl::kExitConfig;
  } catch (const icrl::InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return icrl::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return icrl::kExitInternal;
  }
  return icrl::kExitOk;
}
