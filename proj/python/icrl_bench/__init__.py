"""Python front end for the multi-episode text-game benchmark core."""

import json

try:
    from . import _icrl
except ImportError:  # in-tree build puts the extension on PYTHONPATH directly
    import _icrl

ConfigError = _icrl.ConfigError
GenerationError = _icrl.GenerationError
InputError = _icrl.InputError
NumericError = _icrl.NumericError
ProtocolError = _icrl.ProtocolError
TransportError = _icrl.TransportError

benchmark_envs = _icrl.benchmark_envs
mastermind_feedback = _icrl.mastermind_feedback
wordle_feedback = _icrl.wordle_feedback
parse_action = _icrl.parse_action
mastermind_oracle = _icrl.mastermind_oracle
group_advantages = _icrl.group_advantages
clipped_surrogate = _icrl.clipped_surrogate
clipped_surrogate_grad = _icrl.clipped_surrogate_grad


def make_task(env, seed=0):
    return json.loads(_icrl.make_task(env, seed))


def _task_text(task):
    return task if isinstance(task, str) else json.dumps(task)


class Environment:
    def __init__(self, task):
        self._env = _icrl.Environment(_task_text(task))

    def reset(self):
        return self._env.reset()

    def step(self, action):
        return self._env.step(action)

    @property
    def horizon(self):
        return self._env.horizon


def parse_transcript(jsonl):
    lines = [json.loads(line) for line in jsonl.splitlines() if line.strip()]
    return {"header": lines[0], "steps": lines[1:]}


def run_scripted(task, scripts):
    if scripts and isinstance(scripts[0], str):
        scripts = [scripts]
    return _icrl.run_scripted(_task_text(task), scripts)


def run_random(task, seed=0):
    return _icrl.run_random(_task_text(task), seed)


def run_oracle(task, reveal_map=False):
    return _icrl.run_oracle(_task_text(task), reveal_map)


def j_star(task):
    return _icrl.j_star(_task_text(task))


def evaluate(transcripts):
    return json.loads(_icrl.evaluate(list(transcripts)))


def train_toy(**config):
    csv = _icrl.train_toy(json.dumps(config))
    rows = csv.strip().splitlines()
    keys = rows[0].split(",")
    return [dict(zip(keys, (int(v) if k == "step" else float(v) for k, v in zip(keys, r.split(","))))) for r in rows[1:]]


def run_eval(config):
    return _icrl.eval(json.dumps(config))
