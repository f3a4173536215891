"""Counter-based random streams.

Every (cell, block) pair owns an independent Philox stream derived from
``SeedSequence(seed, spawn_key=(i, j, block))``.  A weight array is therefore
reproducible regardless of the order in which cells or sample blocks are
generated, and regardless of how blocks are distributed over workers.
"""
from __future__ import annotations

import numpy as np

from ..errors import ParameterError
from .params import Kind, ParamSet

BLOCK_SIZE = 1 << 16


def cell_stream(seed: int, i: int, j: int, block: int = 0) -> np.random.Generator:
    """Philox generator for cell (i, j) (1-based) and sample block ``block``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(i), int(j), int(block)))
    return np.random.Generator(np.random.Philox(ss))


def _uniform_open_closed(gen: np.random.Generator, size) -> np.ndarray:
    # (0, 1]: avoids log(0) in the inverse CDFs
    return 1.0 - gen.random(size)


def _check_rates(params: ParamSet, m: int, N: int) -> None:
    params.require(m, N)
    for i in range(1, m + 1):
        for j in range(1, N + 1):
            r = params.rate(i, j)
            if params.kind is Kind.GEOMETRIC and not 0 < r < 1:
                raise ParameterError(f"geometric rate at ({i},{j}) is {r}")
            if params.kind is Kind.EXPONENTIAL and not r > 0:
                raise ParameterError(f"exponential rate at ({i},{j}) is {r}")


def weights_block(params: ParamSet, m: int, N: int, seed: int, block: int,
                  size: int) -> np.ndarray:
    """Weights for ``size`` samples of sample-block ``block``, shape (size, m, N).

    Geometric weights use the inverse CDF floor(log U / log p); exponential
    weights use -log(U) / rate.
    """
    _check_rates(params, m, N)
    geometric = params.kind is Kind.GEOMETRIC
    out = np.empty((size, m, N), dtype=np.int64 if geometric else np.float64)
    for i in range(1, m + 1):
        for j in range(1, N + 1):
            u = _uniform_open_closed(cell_stream(seed, i, j, block), size)
            r = float(params.rate(i, j))
            if geometric:
                out[:, i - 1, j - 1] = np.floor(np.log(u) / np.log(r)).astype(np.int64)
            else:
                out[:, i - 1, j - 1] = -np.log(u) / r
    return out


def sample_weights(params: ParamSet, m: int, N: int, seed: int) -> np.ndarray:
    """One (m, N) weight array; entry [i-1, j-1] is the weight of cell (i, j)."""
    if m < 1 or N < 1:
        raise ParameterError(f"need m, N >= 1 (got {m}, {N})")
    return weights_block(params, m, N, seed, block=0, size=1)[0]
