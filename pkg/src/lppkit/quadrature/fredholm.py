"""Determinants: exact elimination, balanced LU, and Nystrom Fredholm determinants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from ..errors import ContractError, EvaluationError
from .contours import composite_gl


def det_exact(rows) -> object:
    """Determinant by fraction-free-ish Gaussian elimination (works for Fraction/mpf)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    det = a[0][0] * 0 + 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return a[0][0] * 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        for r in range(c + 1, n):
            if a[r][c] == 0:
                continue
            f = a[r][c] / p
            row_r, row_c = a[r], a[c]
            for k in range(c + 1, n):
                row_r[k] = row_r[k] - f * row_c[k]
    return det


def _pow2_scale(v: np.ndarray) -> np.ndarray:
    out = np.ones_like(v)
    pos = v > 0
    out[pos] = 2.0 ** (-np.round(np.log2(v[pos])))
    return out


def balanced_logdet(a: np.ndarray, sweeps: int = 3):
    """(phase, log|det|) of a square matrix after power-of-two row/column balancing.

    The scaling is tracked exactly (powers of two) and removed from the result.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ContractError("square matrix required")
    if n == 0:
        return 1.0 + 0j, 0.0
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise EvaluationError(f"matrix entry ({i},{j}) is not finite")
    log_scale = 0.0
    for _ in range(sweeps):
        r = _pow2_scale(np.sqrt(np.mean(np.abs(a) ** 2, axis=1)))
        a *= r[:, None]
        c = _pow2_scale(np.sqrt(np.mean(np.abs(a) ** 2, axis=0)))
        a *= c[None, :]
        log_scale += np.sum(np.log(r)) + np.sum(np.log(c))
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    d = np.diag(lu)
    if np.any(d == 0):
        return 0j, -np.inf
    swaps = np.sum(piv != np.arange(n))
    phase = (-1.0) ** swaps * np.prod(d / np.abs(d))
    return complex(phase), float(np.sum(np.log(np.abs(d))) - log_scale)


def balanced_det(a: np.ndarray) -> complex:
    phase, logabs = balanced_logdet(a)
    if logabs == -np.inf:
        return 0j
    return phase * np.exp(logabs)


@dataclass(frozen=True)
class NystromScheme:
    """Composite Gauss-Legendre discretization of an interval."""
    breakpoints: tuple
    per_panel: int = 48
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        b = np.asarray(self.breakpoints, dtype=float)
        if b.ndim != 1 or len(b) < 2 or np.any(np.diff(b) <= 0):
            raise ContractError("breakpoints must be strictly increasing")
        x, w = composite_gl(b, self.per_panel)
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", w)

    @classmethod
    def split_at_zero(cls, L: float = 10.0, per_half: int = 48,
                      panels_per_half: int = 1) -> "NystromScheme":
        """[-L, L] with a breakpoint at 0 (kernels carry indicators at 0)."""
        left = np.linspace(-L, 0.0, panels_per_half + 1)
        right = np.linspace(0.0, L, panels_per_half + 1)[1:]
        return cls(tuple(np.concatenate([left, right])), per_half // panels_per_half)

    @classmethod
    def interval(cls, lo: float, hi: float, per_panel: int = 48,
                 panels: int = 1) -> "NystromScheme":
        return cls(tuple(np.linspace(lo, hi, panels + 1)), per_panel)

    def refined(self) -> "NystromScheme":
        return NystromScheme(self.breakpoints, 2 * self.per_panel)

    @property
    def size(self) -> int:
        return len(self.nodes)


def kernel_matrix(K, scheme: NystromScheme) -> np.ndarray:
    """sqrt(w_p w_q) K(u_p, u_q); K is called once on broadcast node grids."""
    u = scheme.nodes
    vals = np.asarray(K(u[:, None], u[None, :]))
    if vals.shape != (len(u), len(u)):
        vals = np.broadcast_to(vals, (len(u), len(u)))
    bad = ~np.isfinite(vals)
    if bad.any():
        p, q = np.argwhere(bad)[0]
        raise EvaluationError(f"kernel not finite at node pair ({p},{q})")
    s = np.sqrt(scheme.weights)
    return s[:, None] * vals * s[None, :]


def fredholm_det(K, scheme: NystromScheme) -> complex:
    """det(I + K) on L^2 of the scheme's interval by the Nystrom method."""
    M = kernel_matrix(K, scheme)
    out = balanced_det(np.eye(len(M)) + M)
    return out if np.iscomplexobj(M) else out.real
