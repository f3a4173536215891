"""KPZ scaling: constants, discrete parameters and the finite perturbed model."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..core.params import ParamSet
from ..errors import ParameterError, RangeError


@dataclass(frozen=True)
class ScalingConstants:
    q: float
    c0: float
    c1: float
    c2: float
    c3: float
    c4: float
    w_c: float


def scaling_constants(q: float) -> ScalingConstants:
    """Scaling constants for the homogeneous rate q (all b_j = 1)."""
    if not 0 < q < 1:
        raise RangeError(f"q must lie in (0, 1), got {q}")
    s = math.sqrt(q)
    return ScalingConstants(
        q=q,
        c0=q ** (-1 / 3) * (1 + s) ** (1 / 3),
        c1=q ** (-1 / 6) * (1 + s) ** (2 / 3),
        c2=2 * s / (1 - s),
        c3=q ** (1 / 6) * (1 + s) ** (1 / 3) / (1 - s),
        c4=q ** (1 / 3) * (1 - s) / (1 + s) ** (1 / 3),
        w_c=1 - s,
    )


@dataclass(frozen=True)
class KPZCoords:
    t: float
    x: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if not self.t > 0:
            raise ParameterError(f"time must be positive, got {self.t}")

    def shifted(self, u: float) -> "KPZCoords":
        return KPZCoords(self.t, self.x, self.xi - u)


def delta_coords(c1: KPZCoords, c2: KPZCoords) -> KPZCoords:
    """Coordinates of the increment between two times."""
    if not c1.t < c2.t:
        raise ParameterError(f"need t1 < t2, got {c1.t}, {c2.t}")
    dt = c2.t - c1.t
    r2, r1 = c2.t / dt, c1.t / dt
    return KPZCoords(dt, r2 ** (2 / 3) * c2.x - r1 ** (2 / 3) * c1.x,
                     r2 ** (1 / 3) * c2.xi - r1 ** (1 / 3) * c1.xi)


def scaled_indices(T: float, c: KPZCoords, q: float) -> tuple:
    """Unrounded (n, m, h) at scale T."""
    k = scaling_constants(q)
    tT = c.t * T
    return (tT - k.c1 * c.x * tT ** (2 / 3), tT + k.c1 * c.x * tT ** (2 / 3),
            k.c2 * tT + k.c3 * c.xi * tT ** (1 / 3))


def kpz_discrete_params(T: float, c: KPZCoords, q: float) -> tuple:
    """(n, m, h) rounded half-to-even."""
    n, m, h = (round(v) for v in scaled_indices(T, c, q))
    if n < 1 or m < 1:
        raise RangeError(f"T = {T} too small: n = {n}, m = {m}")
    return n, m, h


def perturbed_rates(q: float, lambdas, T: float) -> list:
    """a_k = sqrt(q) - c4 lambda_k T^(-1/3) for the r perturbed columns."""
    k = scaling_constants(q)
    out = [math.sqrt(q) - k.c4 * lam * T ** (-1 / 3) for lam in lambdas]
    for i, a in enumerate(out, 1):
        if not 0 < a < 1:
            raise RangeError(f"a_{i} = {a} outside (0, 1); increase T or reduce lambda")
    return out


def perturbed_model(q: float, lambdas, T: float, M: int, N: int) -> ParamSet:
    """b_j = 1, a_1..a_r perturbed and a_i = q afterwards."""
    a = perturbed_rates(q, lambdas, T)
    if len(a) >= M:
        raise ParameterError("need r < M perturbed columns")
    return ParamSet.geometric(a + [q] * (M - len(a)), [1.0] * N)
