"""Symmetric polynomials, w-weights, lattice derivatives and the one-step kernel.

All routines are generic over the scalar type: Fraction inputs give exact
results, float inputs give double-precision results.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ContractError, ParameterError
from .quadrature.contours import Circle, circle_integral
from .quadrature.fredholm import det_exact
from .quadrature.series import Factored


def _zero_like(alpha):
    return alpha[0] * 0 if len(alpha) else Fraction(0)


def elementary(ell: int, alpha: Sequence):
    """e_ell(alpha); e_0 = 1 and e_ell = 0 outside 0..len(alpha)."""
    if ell < 0 or ell > len(alpha):
        return _zero_like(alpha)
    e = [_zero_like(alpha) + 1] + [_zero_like(alpha)] * ell
    for a in alpha:
        for k in range(ell, 0, -1):
            e[k] = e[k] + a * e[k - 1]
    return e[ell]


def complete_homogeneous(ell: int, alpha: Sequence):
    """h_ell(alpha); h_0 = 1 and h_ell = 0 for ell < 0."""
    if ell < 0:
        return _zero_like(alpha)
    h = [_zero_like(alpha) + 1] + [_zero_like(alpha)] * ell
    for a in alpha:
        for k in range(1, ell + 1):
            h[k] = h[k] + a * h[k - 1]
    return h[ell]


def _window(alpha: Sequence, i: int, j: int):
    # variables alpha_{i+1}, ..., alpha_j (1-based)
    return list(alpha[i:j])


def w_weight(i: int, j: int, k: int, alpha: Sequence):
    """The two-branch w-weight w_alpha^{(i,j)}(k) with 1-based i, j."""
    N = len(alpha)
    if not (1 <= i <= N and 1 <= j <= N):
        raise ParameterError(f"indices ({i},{j}) outside 1..{N}")
    zero = _zero_like(alpha)
    if k < 0:
        return zero
    if j >= i:
        win = _window(alpha, i, j)
        total = zero
        for ell in range(0, min(j - i, k) + 1):
            total = total + (-1) ** ell * elementary(ell, win)
        return total
    win = _window(alpha, j, i)
    # sum_{ell <= k} h_ell: cumulative sums via one pass
    h = [zero + 1] + [zero] * k
    for a in win:
        for s in range(1, k + 1):
            h[s] = h[s] + a * h[s - 1]
    total = zero
    for v in h:
        total = total + v
    return total


def w_weight_contour(i: int, j: int, k: int, alpha: Sequence, radius: float | None = None,
                     nodes: int = 128) -> complex:
    """Contour form of w_alpha^{(i,j)}(k) with p = 1/alpha, on |z| = r < min(p, 1)."""
    p = [1.0 / float(a) for a in alpha]
    r = radius if radius is not None else 0.5 * min(min(p), 1.0)
    if r >= min(min(p), 1.0):
        raise ContractError("radius must lie below every p_k and below 1")

    def f(z):
        num = np.ones_like(z)
        for q in p[:j]:
            num = num * (1 - z / q)
        for q in p[:i]:
            num = num / (1 - z / q)
        return num * z ** (-k - 1) / (1 - z)

    return circle_integral(f, Circle(0.0, r, nodes)).value


def one_step_transition(p: Sequence, x: Sequence, y: Sequence):
    """P(G(1) = y | G(0) = x) for one column with weights Geom(p_k)."""
    N = len(p)
    if len(x) != N or len(y) != N:
        raise ParameterError("state length must match the rate vector")
    for pk in p:
        if not 0 < pk < 1:
            raise ParameterError(f"rate {pk} outside (0,1)")
    zero = p[0] * 0
    if any(y[k] < x[k] for k in range(N)):
        return zero
    alpha = [1 / pk for pk in p]
    mat = [[w_weight(i, j, y[j - 1] + j - x[i - 1] - i, alpha) for j in range(1, N + 1)]
           for i in range(1, N + 1)]
    pref = zero + 1
    for k in range(N):
        pref = pref * (1 - p[k]) * p[k] ** (y[k] - x[k])
    if isinstance(zero, Fraction):
        return pref * det_exact(mat)
    return pref * float(np.linalg.det(np.array(mat, dtype=float)))


def one_step_integrand(p: Sequence, x: Sequence, y: Sequence, i: int, j: int) -> Factored:
    """Contour integrand of the one-step matrix entry on a large circle."""
    pj, pi_ = p[j - 1], p[i - 1]
    const = pj ** y[j - 1] * pi_ ** (-x[i - 1]) * (1 - pj)
    # dz/z * z^{y_j - x_i} / (1 - 1/z) = z^{y_j - x_i} / (z - 1)
    factors = {1: -1}
    for k in range(j):
        factors[1 / p[k]] = factors.get(1 / p[k], 0) + 1
    for k in range(i):
        factors[1 / p[k]] = factors.get(1 / p[k], 0) - 1
    return Factored(const, y[j - 1] - x[i - 1], factors)


def one_step_transition_contour(p: Sequence, x: Sequence, y: Sequence):
    """Same law as one_step_transition, via exact residues of the contour form."""
    N = len(p)
    mat = [[one_step_integrand(p, x, y, i, j).integral_all() for j in range(1, N + 1)]
           for i in range(1, N + 1)]
    if isinstance(p[0], Fraction):
        return det_exact(mat)
    return float(np.linalg.det(np.array(mat, dtype=float)))


@dataclass(frozen=True)
class LatticeFunction:
    """A function on the integers, zero below ``x_min`` when that bound is declared."""
    func: Callable[[int], object]
    x_min: int | None = None

    def __call__(self, x: int):
        if self.x_min is not None and x < self.x_min:
            return 0
        return self.func(x)

    @classmethod
    def from_values(cls, values: Sequence, x_min: int) -> "LatticeFunction":
        vals = list(values)
        zero = vals[0] * 0 if vals else 0

        def f(x):
            k = x - x_min
            return vals[k] if 0 <= k < len(vals) else zero
        return cls(f, x_min)

    def values(self, lo: int, hi: int) -> list:
        return [self(x) for x in range(lo, hi + 1)]


def nabla(b, f: LatticeFunction) -> LatticeFunction:
    """(nabla(b) f)(x) = f(x+1) - f(x)/b."""
    lo = None if f.x_min is None else f.x_min - 1
    return LatticeFunction(lambda x: f(x + 1) - f(x) / b, lo)


def nabla_inv(b, f: LatticeFunction) -> LatticeFunction:
    """Inverse of nabla(b) on functions vanishing below a declared x_min."""
    if f.x_min is None:
        raise ContractError("nabla_inv needs a function with declared left support")
    if b == 0:
        raise ParameterError("nabla_inv needs b != 0")
    x0 = f.x_min

    def g(x):
        total = 0
        for y in range(x0, x):
            total = total + b ** (y - x + 1) * f(y)
        return total
    return LatticeFunction(g, x0 + 1)


def summation_by_parts_residual(c, f: LatticeFunction, g: LatticeFunction, lo: int, hi: int):
    """Left side minus right side of the discrete summation-by-parts identity."""
    df, dg = nabla(c, f), nabla(c, g)
    lhs = 0
    for x in range(lo, hi + 1):
        lhs = lhs + df(x) * g(-x) - f(x) * dg(-x)
    return lhs - f(hi + 1) * g(-hi) + f(lo) * g(-lo + 1)
