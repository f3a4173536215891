"""Query and result records for the finite-size distribution formulas."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import ContractError, NumericalHealthError, ParameterError


@dataclass(frozen=True)
class DistResult:
    value: float
    imag_residual: float = 0.0
    quadrature_delta: float = 0.0
    exact: Fraction | None = None
    tolerance: float = 1e-8
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.imag_residual > self.tolerance:
            raise NumericalHealthError(
                f"imaginary residual {self.imag_residual:.3e} exceeds {self.tolerance:.1e}")
        if not (-10 * self.tolerance <= self.value <= 1 + 10 * self.tolerance):
            raise NumericalHealthError(f"probability {self.value!r} outside [0, 1]")

    def __float__(self) -> float:
        return float(self.value)

    def as_dict(self) -> dict:
        return {"value": self.value, "imag_residual": self.imag_residual,
                "quadrature_delta": self.quadrature_delta,
                "exact": None if self.exact is None else str(self.exact), **self.details}


def from_complex(v, delta: float = 0.0, tolerance: float = 1e-8,
                 details: dict | None = None) -> DistResult:
    if isinstance(v, Fraction):
        return DistResult(float(v), 0.0, 0.0, v, tolerance, details or {})
    v = complex(v)
    return DistResult(v.real, abs(v.imag), float(delta), None, tolerance, details or {})


def clamp_thresholds(thresholds: Sequence[int]) -> list:
    """Replace each threshold by the minimum of itself and all later ones.

    G(m, .) is weakly increasing in n, so G(m, n_{k+1}) < h_{k+1} already
    forces G(m, n_k) < h_{k+1}; the event is unchanged by this reduction.
    """
    out = list(thresholds)
    for k in range(len(out) - 2, -1, -1):
        out[k] = min(out[k], out[k + 1])
    return out


@dataclass(frozen=True)
class SingleTimeQuery:
    """P(G(m, n_k) < h_k for all k | G(0, .) = x) with n_p = N = len(x)."""
    m: int
    cuts: tuple
    thresholds: tuple
    x: tuple
    clamp: bool = False

    def __post_init__(self):
        cuts, hs = tuple(int(c) for c in self.cuts), tuple(self.thresholds)
        if len(cuts) != len(hs) or not cuts:
            raise ParameterError("cuts and thresholds must be nonempty and of equal length")
        if cuts[0] <= 0 or any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ParameterError(f"cuts must satisfy 0 < n_1 < ... < n_p, got {cuts}")
        if cuts[-1] != len(self.x):
            raise ParameterError(f"last cut {cuts[-1]} must equal N = {len(self.x)}")
        if self.m < 1:
            raise ParameterError("m must be at least 1")
        if any(b < a for a, b in zip(hs, hs[1:])):
            if not self.clamp:
                raise ContractError(
                    f"thresholds {hs} are not weakly increasing; pass clamp=True to "
                    "reduce them to the equivalent ordered event")
            hs = tuple(clamp_thresholds(hs))
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "thresholds", hs)
        object.__setattr__(self, "x", tuple(self.x))

    @property
    def N(self) -> int:
        return len(self.x)

    def h_of(self, j: int):
        """Threshold attached to column j (1-based)."""
        for c, h in zip(self.cuts, self.thresholds):
            if j <= c:
                return h
        raise ParameterError(f"column {j} beyond N")

    def block_of(self, j: int) -> int:
        for r, c in enumerate(self.cuts):
            if j <= c:
                return r
        raise ParameterError(f"column {j} beyond N")


@dataclass(frozen=True)
class TwoTimeQuery:
    """P(G(m, n) < h, G(M, N) < H | G(0, .) = x) with N = len(x)."""
    m: int
    n: int
    h: int
    M: int
    H: int
    x: tuple
    theta_radius: float = 1.5
    theta_nodes: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if not (1 <= self.m < self.M):
            raise ParameterError(f"need 1 <= m < M, got m={self.m}, M={self.M}")
        if not (1 <= self.n < self.N):
            raise ParameterError(f"need 1 <= n < N, got n={self.n}, N={self.N}")
        if not self.theta_radius > 1:
            raise ParameterError("theta_radius must exceed 1")

    @property
    def N(self) -> int:
        return len(self.x)

    @property
    def nodes(self) -> int:
        return self.theta_nodes or 4 * self.N + 16
