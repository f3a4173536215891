"""Dispatch of RunConfig commands to the library and rendering of their output."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

from ..core.params import Kind
from ..errors import ContractError, LppkitError, ParameterError
from ..finite import (exp_single_time_dist, exp_transition_density, exp_twotime_dist,
                      single_time_dist, transition_prob, twotime_dist)
from ..kpz.diagnostic import finite_to_limit_diagnostic
from ..kpz.twotime import bbp_two_time, brownian_two_time
from .config import RunConfig
from .montecarlo import Event, mc_joint_cdf
from .report import document, render_csv, render_json
from .suites import run_suite

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_VALIDATION = 0, 1, 2, 3
TABLE_COMMANDS = ("simulate", "diagnostic")


@dataclass
class Outcome:
    doc: dict
    exit_code: int = EXIT_OK


def _simulate(cfg: RunConfig) -> Outcome:
    q, params = cfg.query, cfg.model.params()
    N = len(q.x)
    if q.grid:
        events = [Event.two_time(q.m, q.n, h, q.M, N, H) for h, H in q.grid]
    elif q.cuts:
        events = [Event.single_time(q.m, q.cuts, q.thresholds)]
    else:
        events = [Event.two_time(q.m, q.n, q.h, q.M, N, q.H)]
    est = mc_joint_cdf(params, q.x, events, cfg.sample_count, cfg.seed, cfg.workers)
    rows = [{"event": [list(c) for c in e.event.constraints], "count": e.count,
             "samples": e.samples, "estimate": e.estimate, "half_width": e.half_width}
            for e in est]
    return Outcome({"command": "simulate", "rows": rows})


def _exact(cfg: RunConfig) -> Outcome:
    q, params = cfg.query, cfg.model.params()
    geometric = params.kind is Kind.GEOMETRIC
    if q.y is not None:
        if geometric:
            result = transition_prob(params, q.x, q.y, q.m, q.method).as_dict()
        else:
            result = {"density": exp_transition_density(params, q.x, q.y, q.m, q.method)}
        return Outcome({"command": "exact", "quantity": "transition", "result": result})
    sq = q.single_time()
    fn = single_time_dist if geometric else exp_single_time_dist
    return Outcome({"command": "exact", "quantity": "single-time",
                    "result": fn(params, sq, q.method).as_dict()})


def _two_time(cfg: RunConfig) -> Outcome:
    q, params = cfg.query, cfg.model.params()
    fn = twotime_dist if params.kind is Kind.GEOMETRIC else exp_twotime_dist
    return Outcome({"command": "two-time", "result": fn(params, q.two_time(), q.method).as_dict()})


def _asymptotic(cfg: RunConfig) -> Outcome:
    a = cfg.asymptotic
    first, second = a.coords()
    kc = a.kernel.kernel_config()
    if a.initial == "bbp":
        r = bbp_two_time(first, second, tuple(a.lambdas), kc)
    else:
        r = brownian_two_time(first, second, kc)
    return Outcome({"command": "asymptotic", "result": r.as_dict()})


def _validate(cfg: RunConfig) -> Outcome:
    rep = run_suite(cfg.suite, cfg)
    code = EXIT_OK if rep.passed else EXIT_VALIDATION
    return Outcome({"command": "validate", **rep.body(cfg.record_timings)}, code)


def _diagnostic(cfg: RunConfig) -> Outcome:
    a, d = cfg.asymptotic, cfg.diagnostic
    first, second = a.coords()
    rows = finite_to_limit_diagnostic(d.q, d.T_values, first, second, tuple(a.lambdas),
                                      a.kernel.kernel_config())
    if not cfg.record_timings:
        for r in rows:
            r.pop("seconds")
    return Outcome({"command": "diagnostic", "rows": rows})


COMMANDS = {"simulate": _simulate, "exact": _exact, "two-time": _two_time,
            "asymptotic": _asymptotic, "validate": _validate, "diagnostic": _diagnostic}


def execute(cfg: RunConfig) -> Outcome:
    """Run one command; the returned document embeds version and resolved config."""
    out = COMMANDS[cfg.command](cfg)
    out.doc = document(cfg, out.doc)
    return out


def render(cfg: RunConfig, doc: dict) -> str:
    fmt = cfg.format or ("csv" if cfg.command in TABLE_COMMANDS else "json")
    return render_csv(doc) if fmt == "csv" else render_json(doc)


def run(cfg: RunConfig) -> int:
    """Execute, write the output (file or stdout) and return the exit status."""
    try:
        out = execute(cfg)
    except (ParameterError, ContractError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LppkitError as e:
        print(f"numerical health check failed ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = render(cfg, out.doc)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if out.exit_code == EXIT_VALIDATION:
        print(f"validation failed: {cfg.suite}", file=sys.stderr)
    return out.exit_code
