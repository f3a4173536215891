"""Last passage growth recursion and the height interface."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError, RangeError
from .params import Kind, ParamSet, as_state
from .rng import sample_weights


@dataclass(frozen=True)
class GrowthField:
    """G(m, n) for 1 <= m <= m_max, 1 <= n <= N, with G(0, n) = x_n and G(m, 0) = 0."""

    values: np.ndarray
    boundary: tuple

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def shape(self):
        return self.values.shape

    def __call__(self, m: int, n: int):
        if n == 0:
            return 0
        if m == 0:
            return self.boundary[n - 1]
        M, N = self.values.shape
        if not (1 <= m <= M and 1 <= n <= N):
            raise RangeError(f"G({m},{n}) outside populated range {M}x{N}")
        return self.values[m - 1, n - 1].item()


def grow_batch(weights: np.ndarray, x) -> np.ndarray:
    """Vectorised recursion over a leading sample axis.

    ``weights`` has shape (S, m, N); returns G with the same shape.
    G(m, n) = max(G(m-1, n), G(m, n-1)) + w(m, n) with G(m, 0) = 0, G(0, n) = x_n.
    """
    S, m, N = weights.shape
    G = np.empty_like(weights)
    prev = np.broadcast_to(np.asarray(x, dtype=weights.dtype), (S, N))
    for i in range(m):
        left = np.zeros(S, dtype=weights.dtype)
        for j in range(N):
            left = np.maximum(prev[:, j], left) + weights[:, i, j]
            G[:, i, j] = left
        prev = G[:, i, :]
    return G


def grow(params: ParamSet, x, m: int, seed: int = 0,
         weights: np.ndarray | None = None) -> GrowthField:
    """Run the growth recursion for m columns from boundary x.

    ``weights`` (shape (m, N), entry [i-1, j-1] = w(i, j)) overrides sampling.
    """
    x = as_state(x, integral=params.kind is Kind.GEOMETRIC)
    N = len(x)
    if weights is None:
        weights = sample_weights(params, m, N, seed)
    weights = np.asarray(weights)
    if weights.shape != (m, N):
        raise ParameterError(f"weights shape {weights.shape} != {(m, N)}")
    G = grow_batch(weights[None], x)[0]
    return GrowthField(np.array(G), x)


class HeightInterface:
    """H(x, t) = G((t+x+1)/2, (t-x+1)/2) at odd x+t, linear in x in between."""

    def __init__(self, field: GrowthField):
        self.field = field

    def _lattice(self, x: int, t: int):
        return self.field((t + x + 1) // 2, (t - x + 1) // 2)

    def __call__(self, x: float, t: int):
        if t != int(t) or t < 1:
            raise RangeError(f"time {t} must be a positive integer")
        t = int(t)
        if abs(x) > t - 1:
            raise RangeError(f"|x|={abs(x)} outside the cone |x| <= {t - 1}")
        if x == int(x) and (int(x) + t) % 2 == 1:
            return self._lattice(int(x), t)
        # neighbouring lattice sites have parity opposite to t
        lo = math.floor(x)
        if (lo + t) % 2 == 0:
            lo -= 1
        hi = lo + 2
        frac = (x - lo) / 2
        return (1 - frac) * self._lattice(lo, t) + frac * self._lattice(hi, t)


def height_interface(field: GrowthField) -> HeightInterface:
    return HeightInterface(field)
