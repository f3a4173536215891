"""Exact rational laws of small growth instances by dynamic programming.

The DP runs over the Markov chain G(m, .) column by column with every
geometric weight truncated at ``cutoff``.  All arithmetic is in Fractions, so
the omitted mass is known exactly: it equals 1 - sum(masses).

Because G(m, n) >= w(i, j) for every cell below and to the left of (m, n),
any event of the form {G(M, N) < H} only involves weights <= H - 1.  Event
probabilities computed with cutoff >= H - 1 are therefore exact.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from ..errors import OraclePrecisionError, ParameterError
from .params import Kind, ParamSet, as_state


@dataclass(frozen=True)
class ExactLaw:
    support: tuple
    mass: tuple
    truncation_error: Fraction

    def __post_init__(self):
        assert all(w >= 0 for w in self.mass)
        assert sum(self.mass) + self.truncation_error == 1

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.mass))

    def prob(self, y) -> Fraction:
        return self.as_dict().get(tuple(y), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.mass, Fraction(0))


def _geom_masses(p: Fraction, cutoff: int) -> list:
    out, term = [], 1 - p
    for _ in range(cutoff + 1):
        out.append(term)
        term *= p
    return out


def _advance(states: dict, params: ParamSet, col: int, N: int, cutoff: int,
             bound: int | None) -> dict:
    """One column of the recursion applied to a law over W_N.

    States whose entries reach ``bound`` are discarded (used for events that
    require every entry to stay below it).
    """
    # key: (new prefix, old state)
    cur = {((), s): w for s, w in states.items()}
    for j in range(1, N + 1):
        masses = _geom_masses(params.rate(col, j), cutoff)
        nxt = defaultdict(Fraction)
        for (prefix, old), w in cur.items():
            base = max(old[j - 1], prefix[-1] if prefix else 0)
            for k, pk in enumerate(masses):
                v = base + k
                if bound is not None and v >= bound:
                    break
                nxt[(prefix + (v,), old)] += w * pk
        cur = nxt
    out = defaultdict(Fraction)
    for (prefix, _), w in cur.items():
        out[prefix] += w
    return out


def _check(params: ParamSet) -> None:
    if params.kind is not Kind.GEOMETRIC:
        raise ParameterError("the DP oracle needs a geometric model")
    if not params.is_exact:
        raise ParameterError("the DP oracle needs rational (Fraction) rates")


def exact_law_dp(params: ParamSet, x, m: int, cutoff: int,
                 tolerance: Fraction | None = None) -> ExactLaw:
    """Exact law of (G(m, 1), ..., G(m, N)) given G(0, .) = x."""
    _check(params)
    x = as_state(x)
    N = len(x)
    params.require(m, N)
    states = {x: Fraction(1)}
    for col in range(1, m + 1):
        states = _advance(states, params, col, N, cutoff, None)
    support = tuple(sorted(states))
    mass = tuple(states[s] for s in support)
    err = 1 - sum(mass, Fraction(0))
    if tolerance is not None and err > tolerance:
        raise OraclePrecisionError(
            f"truncation error {float(err):.3e} exceeds tolerance {float(tolerance):.3e}")
    return ExactLaw(support, mass, err)


def exact_single_time_prob(params: ParamSet, x, m: int, cuts, thresholds) -> Fraction:
    """Exact P(G(m, n_k) < h_k for all k | x); cutoff chosen so no truncation."""
    _check(params)
    x = as_state(x)
    N = len(x)
    params.require(m, N)
    top = max(thresholds)
    if top <= 0:
        return Fraction(0)
    states = {x: Fraction(1)}
    for col in range(1, m + 1):
        states = _advance(states, params, col, N, top - 1, top)
    return sum((w for s, w in states.items()
                if all(s[n - 1] < h for n, h in zip(cuts, thresholds))), Fraction(0))


def exact_twotime_prob(params: ParamSet, x, m: int, n: int, h: int,
                       M: int, N: int, H: int) -> Fraction:
    """Exact P(G(m, n) < h, G(M, N) < H | G(0, .) = x) for m <= M, n <= N."""
    _check(params)
    x = as_state(x, N)
    params.require(M, N)
    if H <= 0 or h <= 0:
        return Fraction(0)
    states = {x: Fraction(1)}
    for col in range(1, M + 1):
        states = _advance(states, params, col, N, H - 1, H)
        if col == m:
            states = {s: w for s, w in states.items() if s[n - 1] < h}
    return sum(states.values(), Fraction(0))
