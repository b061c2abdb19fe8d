import json
import math

import pytest

import icrl_bench as ib


def test_feedback_examples():
    assert ib.mastermind_feedback([1, 2, 3], [1, 3, 4]) == (1, 1)
    assert ib.wordle_feedback("PLACE", "ALIEN") == "YGXYX"
    with pytest.raises(ValueError):
        ib.mastermind_feedback([1, 2, 3], [0, 2, 3])


def test_parse_action():
    assert ib.parse_action("so \\boxed{up}") == "up"
    assert ib.parse_action("nothing") is None


def test_environment_step():
    task = ib.make_task("mastermind", 3)
    assert task["horizon"] == 3 and task["episodes"] == 3
    env = ib.Environment(task)
    assert env.reset().startswith("You are playing Mastermind.")
    out = env.step("1 2 3")
    assert out["valid"]
    assert out["observation"].startswith("Guess 1: 1 2 3 -> ")


def test_scripted_run_is_deterministic():
    task = ib.make_task("wordle", 1)
    a = ib.run_scripted(task, ["CRANE"])
    assert a == ib.run_scripted(task, ["CRANE"])
    t = ib.parse_transcript(a)
    assert t["header"]["type"] == "task"
    assert t["steps"][0]["observation"].startswith("New episode begins.")
    assert len(t["steps"]) == 30


def test_oracle_and_report():
    runs = [ib.run_oracle(ib.make_task("mastermind", s)) for s in range(8)]
    report = ib.evaluate(runs)
    assert report["success_rate"][1] == 1.0
    assert report["mean_j_star"] == 1.0
    guess, p = ib.mastermind_oracle([[1, 2, 3], [1, 2, 4]], 2)
    assert guess == [1, 2, 3] and p == pytest.approx(1.0)


def test_grpo_examples():
    assert ib.group_advantages([2, 0, 1, 1]) == [1, -1, 0, 0]
    v = ib.clipped_surrogate([2.0, 0.0], [[0.0], []], [[math.log(1.5)], []])
    assert v * 2 == pytest.approx(1.28)
    g = ib.clipped_surrogate_grad([2.0, 0.0], [[0.0], []], [[math.log(1.1)], []])
    assert g[0][0] == pytest.approx(0.55)
    with pytest.raises(ArithmeticError):
        ib.clipped_surrogate([1.0, 0.0], [[0.0], [0.0]], [[float("nan")], [0.0]])


def test_toy_training():
    curve = ib.train_toy(steps=30)
    assert len(curve) == 31
    assert curve[0]["episode2_success"] == pytest.approx(0.5)
    assert curve[-1]["episode2_success"] > 0.9


def test_eval_writes_report(tmp_path):
    code, log = ib.run_eval({
        "suite": [{"env": "rps", "instances": 2}],
        "agent": {"kind": "random", "seed": 1},
        "out": str(tmp_path),
    })
    assert code == 0, log
    report = json.loads((tmp_path / "report.json").read_text())
    assert report[0]["env_id"] == "rps"
    with pytest.raises(ValueError):
        ib.run_eval({"suite": [], "bogus": 1})
