import json
import math

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from lppkit.core import ParamSet
from lppkit.errors import ParameterError
from lppkit.harness import suites
from lppkit.harness.cli import main
from lppkit.harness.config import RunConfig, config_schema, load_config
from lppkit.harness.montecarlo import Event, binomial_half_width, mc_joint_cdf
from lppkit.harness.report import CheckRow, ValidationReport, check, render_csv, render_json
from lppkit.harness.runner import execute


# configuration -----------------------------------------------------------------

def test_config_defaults_and_overrides(tmp_path):
    cfg = RunConfig()
    assert cfg.command == "exact" and cfg.seed == 0 and cfg.workers == 1
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"command": "simulate", "model": {"a": ["1/3", 0.5]}}))
    cfg = load_config(p, seed=5, workers=None)
    assert cfg.seed == 5 and cfg.workers == 1 and cfg.model.a == ["1/3", 0.5]
    assert cfg.model.params().a[0] != 0.5


@pytest.mark.parametrize("bad,path", [({"query": {"m": "x"}}, "query.m"),
                                      ({"colour": 1}, "colour"),
                                      ({"query": {"cuts": [2]}}, "query"),
                                      ({"model": {"a": ["1/0x"]}}, "model.a"),
                                      ({"workers": 0}, "workers")])
def test_config_rejects_bad_input(bad, path):
    with pytest.raises(ValidationError) as e:
        RunConfig.model_validate(bad)
    locs = [".".join(str(p) for p in err["loc"]) for err in e.value.errors()]
    assert any(loc.startswith(path) for loc in locs)


def test_schema_lists_sections():
    props = config_schema()["properties"]
    for key in ("command", "model", "query", "asymptotic", "suite", "seed", "sample_count"):
        assert key in props


# Monte Carlo -----------------------------------------------------------------

def test_mc_certain_event_and_single_column():
    p = ParamSet.geometric([0.5, 0.5], [0.5])
    sure, = mc_joint_cdf(p, (0,), [Event.single_time(2, (1,), (math.inf,))], 1000)
    assert sure.estimate == 1 and sure.half_width == 0
    est = mc_joint_cdf(ParamSet.geometric([0.5], [0.6]), (0,),
                       [Event.single_time(1, (1,), (h,)) for h in (1, 2, 4)], 200_000, seed=3)
    for e, h in zip(est, (1, 2, 4)):
        exact = 1 - 0.3 ** h
        assert abs(e.estimate - exact) <= binomial_half_width(exact, e.samples)


def test_mc_independent_of_workers():
    p = ParamSet.geometric([0.5, 0.4, 0.5], [0.6, 0.5])
    events = [Event.two_time(1, 1, h, 3, 2, h + 2) for h in (1, 2, 3)]
    n = 3 * 65536 + 17
    a = mc_joint_cdf(p, (0, 0), events, n, seed=9, workers=1)
    b = mc_joint_cdf(p, (0, 0), events, n, seed=9, workers=2)
    assert [e.count for e in a] == [e.count for e in b]


def test_mc_rejects_bad_events():
    p = ParamSet.geometric([0.5], [0.5])
    with pytest.raises(ParameterError):
        mc_joint_cdf(p, (0,), [Event.single_time(1, (2,), (1,))], 10)
    with pytest.raises(ParameterError):
        mc_joint_cdf(p, (0,), [Event.single_time(1, (1,), (1,))], 0)


# reports -----------------------------------------------------------------------

rows = st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=20)


@settings(max_examples=100, deadline=None)
@given(rows, st.floats(0.5, 1.0))
def test_report_pass_logic(errs, required):
    rep = ValidationReport("x", [CheckRow(f"r{i}", 0.0, e, e, t) for i, (e, t) in enumerate(errs)],
                           required)
    passed = [e <= t for e, t in errs]
    assert [r.passed for r in rep.rows] == passed
    assert math.isclose(rep.pass_fraction, sum(passed) / len(passed))
    assert rep.passed == (sum(passed) / len(passed) >= required)
    assert len(rep.failures()) == passed.count(False)


def test_empty_report_fails_and_check_defaults():
    assert not ValidationReport("x").passed
    r = check("a", 0.5, 0.5 + 1e-9, 1e-8)
    assert r.passed and abs(r.error - 1e-9) < 1e-15
    assert "runtime" not in r.as_dict() and "runtime" in r.as_dict(timings=True)


def test_renderers():
    doc = {"a": 1, "rows": [{"x": 1, "y": [1, 2]}, {"x": 2, "z": "q"}]}
    text = render_csv(doc)
    assert text.splitlines()[0] == "# a: 1"
    assert text.splitlines()[1] == "x,y,z"
    assert json.loads(render_json(doc)) == doc


# command line ----------------------------------------------------------------

def _run(argv, capsys):
    with pytest.raises(SystemExit) as e:
        main(argv)
    out = capsys.readouterr()
    return e.value.code, out.out, out.err


def _config(tmp_path, data):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(data))
    return str(p)


def test_cli_exact_ok(tmp_path, capsys):
    cfg = _config(tmp_path, {"model": {"a": ["1/2"], "b": ["1/2"]},
                             "query": {"x": [0], "m": 1, "cuts": [1], "thresholds": [1]}})
    code, out, _ = _run(["exact", "--config", cfg], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["exact"] == "3/4" and "lppkit_version" in doc


def test_cli_usage_errors(tmp_path, capsys):
    assert _run(["frobnicate"], capsys)[0] == 1
    code, _, err = _run(["exact", "--config", _config(tmp_path, {"query": {"m": "x"}})], capsys)
    assert code == 1 and "query.m" in err
    bad = _config(tmp_path, {"query": {"x": [0, 0], "m": 1, "cuts": [1], "thresholds": [2]}})
    assert _run(["exact", "--config", bad], capsys)[0] == 1


def test_cli_numerical_failure(tmp_path, capsys):
    cfg = _config(tmp_path, {"asymptotic": {"kernel": {"L": 2.0, "auto_L": False}}})
    code, _, err = _run(["asymptotic", "--config", cfg], capsys)
    assert code == 2 and "TruncationError" in err


def test_cli_validation_failure(tmp_path, capsys, monkeypatch):
    def failing(cfg):
        return ValidationReport("one-step", [CheckRow("bad", 0.0, 1.0, 1.0, 0.1)])
    monkeypatch.setitem(suites.SUITES, "one-step", failing)
    code, out, err = _run(["validate", "--suite", "one-step"], capsys)
    assert code == 3 and json.loads(out)["passed"] is False


def test_cli_schema(capsys):
    code, out, _ = _run(["schema"], capsys)
    assert code == 0 and "properties" in json.loads(out)


def test_cli_output_is_deterministic(tmp_path, capsys):
    cfg = _config(tmp_path, {"command": "simulate",
                             "model": {"a": [0.5, 0.4, 0.5], "b": [0.6, 0.5]},
                             "query": {"x": [0, 0], "m": 1, "n": 1, "M": 3,
                                       "grid": [[1, 3], [2, 4]]}})
    outs = []
    for workers in ("1", "2"):
        path = tmp_path / f"out{workers}.csv"
        code, _, _ = _run(["simulate", "--config", cfg, "--samples", "140000", "--seed", "4",
                           "--workers", workers, "--out", str(path)], capsys)
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_execute_embeds_config():
    doc = execute(RunConfig(command="validate", suite="one-step")).doc
    assert doc["config"]["suite"] == "one-step" and "workers" not in doc["config"]
    assert doc["passed"] is True
