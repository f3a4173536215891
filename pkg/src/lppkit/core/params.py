"""Model parameters and state vectors."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import ParameterError


class Kind(str, enum.Enum):
    GEOMETRIC = "geometric"
    EXPONENTIAL = "exponential"


def _as_number(v):
    if isinstance(v, (Fraction, int)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return float(v)


@dataclass(frozen=True)
class ParamSet:
    """Column/row rates of the inhomogeneous model.

    Geometric: weight at cell (i, j) is Geom(a_i * b_j), i.e.
    P(w = k) = (1 - a_i b_j) (a_i b_j)^k.  Exponential: Exp(alpha_i + beta_j).
    Indices are 1-based in every public method, following the model.
    """

    kind: Kind
    a: tuple = ()
    b: tuple = ()
    alpha: tuple = ()
    beta: tuple = ()

    def __post_init__(self):
        if self.kind is Kind.GEOMETRIC:
            if not self.a or not self.b:
                raise ParameterError("geometric model needs non-empty a and b")
            for i, ai in enumerate(self.a, 1):
                if not 0 <= ai <= 1:
                    raise ParameterError(f"a[{i}]={ai} not in [0, 1]")
                for j, bj in enumerate(self.b, 1):
                    if not 0 < ai * bj < 1:
                        raise ParameterError(
                            f"rate a[{i}]*b[{j}]={ai * bj} not in (0, 1)")
            for j, bj in enumerate(self.b, 1):
                if not 0 <= bj <= 1:
                    raise ParameterError(f"b[{j}]={bj} not in [0, 1]")
        else:
            if not self.alpha or not self.beta:
                raise ParameterError("exponential model needs alpha and beta")
            for i, al in enumerate(self.alpha, 1):
                for j, be in enumerate(self.beta, 1):
                    if not al + be > 0:
                        raise ParameterError(
                            f"rate alpha[{i}]+beta[{j}]={al + be} must be > 0")

    @classmethod
    def geometric(cls, a: Sequence, b: Sequence) -> "ParamSet":
        return cls(Kind.GEOMETRIC, a=tuple(_as_number(v) for v in a),
                   b=tuple(_as_number(v) for v in b))

    @classmethod
    def exponential(cls, alpha: Sequence, beta: Sequence) -> "ParamSet":
        return cls(Kind.EXPONENTIAL, alpha=tuple(float(v) for v in alpha),
                   beta=tuple(float(v) for v in beta))

    @property
    def is_exact(self) -> bool:
        """True when every rate is a Fraction (rational-mode capable)."""
        return self.kind is Kind.GEOMETRIC and all(
            isinstance(v, Fraction) for v in self.a + self.b)

    @property
    def n_columns(self) -> int:
        return len(self.a) if self.kind is Kind.GEOMETRIC else len(self.alpha)

    @property
    def n_rows(self) -> int:
        return len(self.b) if self.kind is Kind.GEOMETRIC else len(self.beta)

    def require(self, m: int, N: int) -> None:
        if m < 0 or N < 1:
            raise ParameterError(f"need m >= 0 and N >= 1, got m={m}, N={N}")
        if m > self.n_columns or N > self.n_rows:
            raise ParameterError(
                f"parameters cover {self.n_columns} columns x {self.n_rows} rows,"
                f" query needs {m} x {N}")

    def rate(self, i: int, j: int):
        """Geometric parameter a_i b_j, or exponential rate alpha_i + beta_j."""
        if self.kind is Kind.GEOMETRIC:
            return self.a[i - 1] * self.b[j - 1]
        return self.alpha[i - 1] + self.beta[j - 1]

    def as_float(self) -> "ParamSet":
        if self.kind is Kind.GEOMETRIC:
            return ParamSet.geometric([float(v) for v in self.a],
                                      [float(v) for v in self.b])
        return self


def as_state(x: Sequence, N: int | None = None, integral: bool = True) -> tuple:
    """Validate a weakly increasing state vector (an element of W_N)."""
    x = tuple(x)
    if N is not None and len(x) != N:
        raise ParameterError(f"state vector has length {len(x)}, expected {N}")
    if integral:
        if any(int(v) != v for v in x):
            raise ParameterError(f"state vector {x} must be integer valued")
        x = tuple(int(v) for v in x)
    if any(x[k] > x[k + 1] for k in range(len(x) - 1)):
        raise ParameterError(f"state vector {x} is not weakly increasing")
    return x
