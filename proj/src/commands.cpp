#include "icrl/commands.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "icrl/agents.hpp"
#include "icrl/errors.hpp"
#include "icrl/metrics.hpp"
#include "icrl/transcript_io.hpp"

namespace icrl {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Job {
  std::size_t group = 0;
  TaskInstance task;
  int rollout = 0;
};

// Runs fn(job_index) on `parallel` threads; rethrows the first failure.
template <typename F>
void run_pool(std::size_t jobs, int parallel, F&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(parallel, static_cast<int>(jobs)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

fs::path transcript_path(const fs::path& root, const TaskInstance& task, int rollout) {
  return root / "instances" / (std::string(to_string(task.env_id)) + "-s" + std::to_string(task.seed)) /
         ("rollout-" + std::to_string(rollout) + ".jsonl");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::vector<EvalReport> reports_for(const std::vector<std::vector<Transcript>>& groups) {
  std::vector<EvalReport> reports;
  for (const auto& g : groups) {
    if (!g.empty()) reports.push_back(evaluate(g));
  }
  return reports;
}

void write_reports(const fs::path& dir, const std::vector<EvalReport>& reports) {
  json all = json::array();
  for (const auto& r : reports) all.push_back(to_json(r));
  write_text(dir / "report.json", all.dump(2) + "\n");
  write_text(dir / "report.csv", to_csv(reports));
}

void print_rows(const std::vector<EvalReport>& reports, std::ostream& out) {
  for (const auto& r : reports) {
    out << r.env_id << " (" << r.transcripts << " runs, " << r.truncated << " truncated)\n";
    for (int e = 1; e <= r.episodes; ++e) out << "  " << format_episode_row(r, e) << "\n";
  }
}

// Groups transcripts by environment and episode count, in a stable order.
std::vector<std::vector<Transcript>> group_transcripts(std::vector<Transcript> all) {
  std::map<std::pair<std::string, int>, std::vector<Transcript>> by_key;
  for (auto& t : all) by_key[{std::string(to_string(t.task.env_id)), t.task.episodes}].push_back(std::move(t));
  std::vector<std::vector<Transcript>> out;
  for (auto& [key, v] : by_key) out.push_back(std::move(v));
  return out;
}

std::vector<Transcript> load_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("no transcript directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Transcript> out;
  for (const auto& f : files) out.push_back(read_transcript(f));
  if (out.empty()) throw ConfigError("no transcripts under " + dir.string());
  return out;
}

template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenerationError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TransportError& e) {
    log << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const ProtocolError& e) {
    log << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int cmd_eval(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<Job> jobs;
    for (std::size_t g = 0; g < config.suite.size(); ++g) {
      for (const auto& task : expand(config.suite[g], config.seed_offset)) {
        for (int r = 0; r < config.rollouts; ++r) jobs.push_back({g, task, r});
      }
    }
    Budget budget;
    budget.max_chars = config.budget_chars;
    budget.max_steps = config.budget_steps;
    set_max_in_flight_requests(config.parallel);

    const fs::path root(config.out);
    fs::create_directories(root);
    write_text(root / "config.resolved.json", to_json(config).dump(2) + "\n");

    std::vector<std::optional<Transcript>> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    run_pool(jobs.size(), config.parallel, [&](std::size_t i) {
      const Job& job = jobs[i];
      try {
        auto agent = make_agent(config.agent, job.task, job.rollout);
        results[i] = run_task(job.task, *agent, budget);
      } catch (const TransportError&) {
        throw;
      } catch (const ProtocolError&) {
        throw;
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        errors[i] = e.what();
        return;
      }
      write_transcript(transcript_path(root, job.task, job.rollout), *results[i]);
    });

    std::vector<std::vector<Transcript>> groups(config.suite.size());
    json failures = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (results[i]) {
        groups[jobs[i].group].push_back(std::move(*results[i]));
      } else {
        failures.push_back({{"task", task_to_json(jobs[i].task)}, {"rollout", jobs[i].rollout}, {"error", errors[i]}});
        log << "instance " << to_string(jobs[i].task.env_id) << "-s" << jobs[i].task.seed << " rollout "
            << jobs[i].rollout << " failed: " << errors[i] << "\n";
      }
    }
    const auto reports = reports_for(groups);
    write_reports(root, reports);
    if (!failures.empty()) write_text(root / "failures.json", failures.dump(2) + "\n");
    print_rows(reports, log);
    log << "wrote " << jobs.size() - failures.size() << " transcripts to " << root.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    if (options.env != EnvId::kMaze && options.env != EnvId::kMastermind) {
      throw ConfigError("oracles exist for maze and mastermind only");
    }
    if (options.instances < 1) throw ConfigError("instances must be at least 1");
    AgentSpec spec;
    spec.kind = "oracle";
    spec.reveal_map = options.reveal_map;
    std::vector<TaskInstance> tasks;
    for (int i = 0; i < options.instances; ++i) tasks.push_back(make_task(options.env, options.seed + i));
    std::vector<Transcript> results(tasks.size());
    run_pool(tasks.size(), options.parallel, [&](std::size_t i) {
      auto agent = make_agent(spec, tasks[i], 0);
      results[i] = run_task(tasks[i], *agent);
      if (!options.out.empty()) write_transcript(transcript_path(options.out, tasks[i], 0), results[i]);
    });
    const EvalReport report = evaluate(results);
    if (!options.out.empty()) write_reports(options.out, {report});
    out << to_json(report).dump(2) << "\n";
    print_rows({report}, log);
    return static_cast<int>(kExitOk);
  });
}

int cmd_report(const fs::path& transcripts, const std::optional<fs::path>& baseline,
               const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    auto reports = reports_for(group_transcripts(load_dir(transcripts)));
    if (baseline) {
      const auto base = reports_for(group_transcripts(load_dir(*baseline)));
      for (auto& r : reports) {
        for (const auto& b : base) {
          if (b.env_id == r.env_id && b.episodes == r.episodes) compare_to_baseline(r, b);
        }
      }
    }
    print_rows(reports, out);
    if (out_dir) write_reports(*out_dir, reports);
    return static_cast<int>(kExitOk);
  });
}

ToyTrainConfig toy_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("toy config must be an object");
  static const std::vector<std::string> kKeys = {"group_size", "batch_trajectories", "steps", "learning_rate",
                                                 "inner_epochs", "eps_low", "eps_high", "seed", "episodes"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError("unknown key '" + key + "' in toy config");
    }
  }
  try {
    ToyTrainConfig c;
    c.group_size = j.value("group_size", c.group_size);
    c.batch_trajectories = j.value("batch_trajectories", c.batch_trajectories);
    c.steps = j.value("steps", c.steps);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.inner_epochs = j.value("inner_epochs", c.inner_epochs);
    c.clip.eps_low = j.value("eps_low", c.clip.eps_low);
    c.clip.eps_high = j.value("eps_high", c.clip.eps_high);
    c.seed = j.value("seed", c.seed);
    c.episodes = j.value("episodes", c.episodes);
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad toy config: ") + e.what());
  }
}

json to_json(const ToyTrainConfig& c) {
  return {{"group_size", c.group_size}, {"batch_trajectories", c.batch_trajectories},
          {"steps", c.steps},           {"learning_rate", c.learning_rate},
          {"inner_epochs", c.inner_epochs}, {"eps_low", c.clip.eps_low},
          {"eps_high", c.clip.eps_high}, {"seed", c.seed},
          {"episodes", c.episodes}};
}

int cmd_train_toy(const ToyTrainConfig& config, const std::optional<fs::path>& csv, std::ostream& out) {
  return guarded(out, [&] {
    SoftmaxTablePolicy policy(2);
    const auto curve = toy_meta_train(config, policy);
    if (csv) write_text(*csv, curve_to_csv(curve));
    const auto& first = curve.front();
    const auto& last = curve.back();
    json summary = {{"config", to_json(config)},
                    {"initial", {{"expected_reward", first.expected_reward},
                                 {"episode1_success", first.episode1_success},
                                 {"episode2_success", first.episode2_success}}},
                    {"final", {{"expected_reward", last.expected_reward},
                               {"episode1_success", last.episode1_success},
                               {"episode2_success", last.episode2_success}}}};
    out << summary.dump(2) << "\n";
    return static_cast<int>(kExitOk);
  });
}

}  // namespace icrl
