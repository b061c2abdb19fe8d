#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "icrl/agents.hpp"
#include "icrl/commands.hpp"
#include "icrl/envs/wordle.hpp"
#include "icrl/errors.hpp"
#include "icrl/grpo.hpp"
#include "icrl/metrics.hpp"
#include "icrl/oracles.hpp"
#include "icrl/transcript_io.hpp"

namespace py = pybind11;
using namespace icrl;

namespace {

// JSON crosses the boundary as text; the Python package decodes it.
TaskInstance task_from_text(const std::string& text) { return task_from_json(nlohmann::json::parse(text)); }

std::string run_with(const std::string& task_json, Agent& agent) {
  const TaskInstance task = task_from_text(task_json);
  Transcript t;
  {
    py::gil_scoped_release release;
    t = run_task(task, agent);
  }
  return to_jsonl(t);
}

class PyEnv {
 public:
  explicit PyEnv(const std::string& task_json) : env_(make_environment(task_from_text(task_json))) {}
  std::string reset() { return env_->reset(); }
  py::dict step(const std::string& action) {
    const StepOutcome o = env_->step(env_->normalize_action(action));
    py::dict d;
    d["observation"] = o.observation;
    d["reward"] = o.reward;
    d["terminal"] = o.terminal;
    d["success"] = o.success;
    d["valid"] = o.valid;
    return d;
  }
  int horizon() const { return env_->horizon(); }
  int steps_taken() const { return env_->steps_taken(); }

 private:
  std::unique_ptr<Environment> env_;
};

GroupBatch make_batch(std::vector<double> rewards, std::vector<std::vector<double>> old_lp,
                      std::vector<std::vector<double>> new_lp) {
  return {std::move(rewards), std::move(old_lp), std::move(new_lp)};
}

}  // namespace

PYBIND11_MODULE(_icrl, m) {
  m.doc() = "Multi-episode text-game benchmark core";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<TransportError>(m, "TransportError", PyExc_ConnectionError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  m.def("benchmark_envs", [] {
    std::vector<std::string> out;
    for (EnvId id : benchmark_envs()) out.emplace_back(to_string(id));
    return out;
  });
  m.def("make_task", [](const std::string& env, std::uint64_t seed) {
    return task_to_json(make_task(env_id_from_string(env), seed)).dump();
  });

  py::class_<PyEnv>(m, "Environment")
      .def(py::init<const std::string&>(), py::arg("task_json"))
      .def("reset", &PyEnv::reset)
      .def("step", &PyEnv::step, py::arg("action"))
      .def_property_readonly("horizon", &PyEnv::horizon)
      .def_property_readonly("steps_taken", &PyEnv::steps_taken);

  m.def("mastermind_feedback", [](const Code& secret, const Code& guess) {
    const Pegs p = mastermind_feedback(secret, guess);
    return std::make_pair(p.black, p.white);
  });
  m.def("wordle_feedback", [](const std::string& secret, const std::string& guess) {
    return wordle_feedback(secret, guess);
  });
  m.def("parse_action", [](const std::string& raw) { return parse_action(raw); });

  m.def("run_scripted", [](const std::string& task_json, std::vector<std::vector<std::string>> scripts) {
    ScriptedAgent agent(std::move(scripts));
    return run_with(task_json, agent);
  }, py::arg("task_json"), py::arg("scripts"));
  m.def("run_random", [](const std::string& task_json, std::uint64_t seed) {
    const TaskInstance task = task_from_text(task_json);
    RandomAgent agent(task.env_id, seed);
    return run_with(task_json, agent);
  }, py::arg("task_json"), py::arg("seed"));
  m.def("run_oracle", [](const std::string& task_json, bool reveal_map) {
    AgentSpec spec;
    spec.kind = "oracle";
    spec.reveal_map = reveal_map;
    auto agent = make_agent(spec, task_from_text(task_json), 0);
    return run_with(task_json, *agent);
  }, py::arg("task_json"), py::arg("reveal_map") = false);

  m.def("j_star", [](const std::string& task_json) { return j_star(task_from_text(task_json)); });
  m.def("mastermind_oracle", [](std::vector<Code> candidates, int turns) {
    MastermindSolver solver;
    const MastermindPlan p = solver.best(CandidateSet(std::move(candidates)), turns);
    return std::make_pair(p.guess, p.success_probability);
  }, py::arg("candidates"), py::arg("turns"));

  m.def("evaluate", [](const std::vector<std::string>& jsonl) {
    std::vector<Transcript> ts;
    for (const auto& text : jsonl) ts.push_back(from_jsonl(text));
    return to_json(evaluate(ts)).dump();
  });

  m.def("group_advantages", [](std::vector<double> r) { return group_advantages(r); });
  m.def("clipped_surrogate", [](std::vector<double> rewards, std::vector<std::vector<double>> logp_old,
                                std::vector<std::vector<double>> logp_new, double eps_low, double eps_high) {
    return clipped_surrogate(make_batch(rewards, logp_old, logp_new), {eps_low, eps_high});
  }, py::arg("rewards"), py::arg("logp_old"), py::arg("logp_new"), py::arg("eps_low") = 0.2,
     py::arg("eps_high") = 0.28);
  m.def("clipped_surrogate_grad", [](std::vector<double> rewards, std::vector<std::vector<double>> logp_old,
                                     std::vector<std::vector<double>> logp_new, double eps_low, double eps_high) {
    return clipped_surrogate_grad(make_batch(rewards, logp_old, logp_new), {eps_low, eps_high});
  }, py::arg("rewards"), py::arg("logp_old"), py::arg("logp_new"), py::arg("eps_low") = 0.2,
     py::arg("eps_high") = 0.28);

  m.def("train_toy", [](const std::string& config_json) {
    const ToyTrainConfig cfg = toy_config_from_json(nlohmann::json::parse(config_json));
    SoftmaxTablePolicy policy(2);
    std::vector<CurvePoint> curve;
    {
      py::gil_scoped_release release;
      curve = toy_meta_train(cfg, policy);
    }
    return curve_to_csv(curve);
  }, py::arg("config_json") = "{}");

  m.def("eval", [](const std::string& config_json) {
    const RunConfig cfg = run_config_from_json(nlohmann::json::parse(config_json));
    std::ostringstream log;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cmd_eval(cfg, log);
    }
    return std::make_pair(code, log.str());
  }, py::arg("config_json"));
}
