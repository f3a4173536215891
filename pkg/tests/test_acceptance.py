"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with or without ``-s``).
"""
import re

import pytest

from lppkit.harness.cli import main
from lppkit.harness.config import RunConfig
from lppkit.harness.suites import run_suite
from tw_oracle import goe_cdf, gue_cdf

MC_SAMPLES = 1_000_000


def _report(capsys, label, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


def _suite(name, capsys, label, **cfg):
    rep = run_suite(name, RunConfig(command="validate", suite=name, **cfg))
    worst = max(rep.rows, key=lambda r: r.error / r.tolerance if r.tolerance else 0)
    _report(capsys, label, rep.passed,
            f"{sum(r.passed for r in rep.rows)}/{len(rep.rows)} rows pass "
            f"(required {rep.required_fraction:.0%}); worst {worst.name}: "
            f"error {worst.error:.2e} vs tolerance {worst.tolerance:.1e}")
    return rep


def test_1_exact_small(capsys):
    rep = _suite("exact-small", capsys, "1 exact-small")
    exact = [r for r in rep.rows if r.name.startswith("rational")]
    assert exact and all(r.error == 0 for r in exact)
    assert all(r.tolerance <= 1e-10 for r in rep.rows if r not in exact)
    assert rep.passed


def test_2_one_step(capsys):
    rep = _suite("one-step", capsys, "2 one-step", seed=0)
    assert len(rep.rows) >= 50 and rep.passed


def test_3_identity(capsys):
    rep = _suite("identity", capsys, "3 identity")
    Ns = {int(m.group(1)) for r in rep.rows for m in [re.search(r"N=(\d+)", r.name)] if m}
    assert max(Ns) == 6 and rep.passed


def test_4_marginalization(capsys):
    rep = _suite("marginalization", capsys, "4 marginalization")
    assert all(r.tolerance == 1e-6 for r in rep.rows) and rep.passed


def test_5_mc_concordance(capsys):
    rep = _suite("mc-concordance", capsys, "5 mc-concordance", sample_count=MC_SAMPLES)
    assert len(rep.rows) == 40 and rep.pass_fraction >= 0.95


def test_6_exponential(capsys):
    rep = _suite("exponential", capsys, "6 exponential", sample_count=MC_SAMPLES)
    assert sum("eps" in r.name for r in rep.rows) == 5 and rep.passed


def test_7_asymptotic_anchor(capsys):
    rep = _suite("asymptotic-anchor", capsys, "7 asymptotic-anchor (package anchors)")
    # the same limit values against the test-side oracles
    worst = 0.0
    for r in rep.rows:
        xi = float(re.search(r"xi1=(-?[\d.]+)", r.name).group(1))
        ref, tol = (gue_cdf(xi), 1e-4) if "bbp" in r.name else (goe_cdf(xi) ** 2, 1e-3)
        worst = max(worst, abs(r.value - ref) / tol)
    _report(capsys, "7 asymptotic-anchor (test oracles)", worst <= 1,
            f"worst error / tolerance {worst:.2e}")
    assert len(rep.rows) == 8 and rep.passed and worst <= 1


def test_8_numerical_health(capsys):
    rep = _suite("numerical-health", capsys, "8 numerical-health")
    assert all(r.tolerance == 1e-6 for r in rep.rows) and rep.passed


def test_9_kernel_limit(capsys):
    rep = _suite("kernel-limit", capsys, "9 kernel-limit")
    pairs = {re.search(r"\(u,v\)=\(.*\)", r.name).group(0) for r in rep.rows}
    assert len(pairs) == 10 and all(r.value < r.oracle for r in rep.rows) and rep.passed


@pytest.mark.parametrize("suite,samples", [("mc-concordance", 200_000), ("one-step", None)])
def test_10_determinism(tmp_path, capsys, suite, samples):
    outs = []
    for workers in (1, 2, 3):
        path = tmp_path / f"{suite}-{workers}.json"
        argv = ["validate", "--suite", suite, "--seed", "11", "--workers", str(workers),
                "--out", str(path)]
        if samples:
            argv += ["--samples", str(samples)]
        with pytest.raises(SystemExit) as e:
            main(argv)
        assert e.value.code in (0, 3)
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] == outs[2]
    _report(capsys, f"10 determinism ({suite})", ok,
            "byte-identical at workers 1, 2, 3" if ok else "outputs differ")
    assert ok
