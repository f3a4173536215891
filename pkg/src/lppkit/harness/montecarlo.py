"""Monte Carlo estimates of joint last passage events with binomial error bars.

Samples are split into fixed blocks of ``BLOCK_SIZE``; block k always draws
from the substreams keyed by (seed, cell, k).  Each block yields integer
counts, and counts are summed in block order, so the table does not depend
on how many workers process the blocks.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..core.growth import grow_batch
from ..core.params import Kind, ParamSet, as_state
from ..core.rng import BLOCK_SIZE, weights_block
from ..errors import ParameterError


@dataclass(frozen=True)
class Event:
    """Intersection of the constraints G(m, n) < h, each given as (m, n, h)."""
    constraints: tuple

    @classmethod
    def two_time(cls, m: int, n: int, h, M: int, N: int, H) -> "Event":
        return cls(((m, n, h), (M, N, H)))

    @classmethod
    def single_time(cls, m: int, cuts: Sequence[int], thresholds: Sequence) -> "Event":
        return cls(tuple((m, n, h) for n, h in zip(cuts, thresholds)))


@dataclass(frozen=True)
class MCEstimate:
    event: Event
    count: int
    samples: int

    @property
    def estimate(self) -> float:
        return self.count / self.samples

    @property
    def half_width(self) -> float:
        """3 sigma binomial half-width from the estimate."""
        p = self.estimate
        return 3.0 * math.sqrt(p * (1.0 - p) / self.samples)


def _block_counts(args) -> list:
    params, x, events, m, N, seed, block, size = args
    w = weights_block(params, m, N, seed, block, size)
    G = grow_batch(w, x)
    out = []
    for ev in events:
        ok = np.ones(size, dtype=bool)
        for mi, ni, h in ev.constraints:
            ok &= G[:, mi - 1, ni - 1] < h
        out.append(int(ok.sum()))
    return out


def mc_joint_cdf(params: ParamSet, x, events: Sequence[Event], samples: int, seed: int = 0,
                 workers: int = 1) -> list:
    """Empirical probabilities of ``events`` from ``samples`` independent growth runs."""
    if samples < 1:
        raise ParameterError("samples must be at least 1")
    x = as_state(x, integral=params.kind is Kind.GEOMETRIC)
    N = len(x)
    events = list(events)
    m = max((c[0] for ev in events for c in ev.constraints), default=1)
    for ev in events:
        for mi, ni, _ in ev.constraints:
            if not (1 <= mi <= m and 1 <= ni <= N):
                raise ParameterError(f"constraint at ({mi}, {ni}) outside {m} x {N}")
    params.require(m, N)
    sizes = [BLOCK_SIZE] * (samples // BLOCK_SIZE)
    if samples % BLOCK_SIZE:
        sizes.append(samples % BLOCK_SIZE)
    jobs = [(params, x, events, m, N, seed, k, s) for k, s in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_block = list(pool.map(_block_counts, jobs))
    else:
        per_block = [_block_counts(j) for j in jobs]
    totals = np.sum(np.array(per_block, dtype=np.int64), axis=0)
    return [MCEstimate(ev, int(c), samples) for ev, c in zip(events, totals)]


def binomial_half_width(p: float, samples: int) -> float:
    """3 sigma half-width of a sample mean of ``samples`` Bernoulli(p) draws."""
    return 3.0 * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
