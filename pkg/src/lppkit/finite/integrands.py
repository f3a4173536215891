"""Factored contour integrands of the finite geometric model.

Every integrand is const * z^p * prod (z - r)^e, so it can be evaluated by
exact residues or sampled on a contour.  Indices are 1-based.
"""
from __future__ import annotations

from ..core.params import ParamSet
from ..quadrature.series import Factored


def _bump(factors: dict, root, e: int) -> None:
    factors[root] = factors.get(root, 0) + e


def _b_factors(params: ParamSet, up: range, down: range, factors: dict | None = None) -> dict:
    """prod_{k in up} (z - 1/b_k) / prod_{k in down} (z - 1/b_k)."""
    factors = {} if factors is None else factors
    for k in up:
        _bump(factors, 1 / params.b[k - 1], 1)
    for k in down:
        _bump(factors, 1 / params.b[k - 1], -1)
    return factors


def _a_factors(params: ParamSet, ks: range, factors: dict) -> int:
    """prod_{k in ks} 1/(1 - a_k/z) = z^c / prod (z - a_k); returns the z-power c."""
    shift = 0
    for k in ks:
        ak = params.a[k - 1]
        if ak == 0:
            continue
        _bump(factors, ak, -1)
        shift += 1
    return shift


def _a_const(params: ParamSet, ks: range, bj):
    c = bj * 0 + 1
    for k in ks:
        c = c * (1 - params.a[k - 1] * bj)
    return c


def transition_integrand(params: ParamSet, x, y, m: int, i: int, j: int) -> Factored:
    """Integrand of the m-step transition entry M(i, j | x, y)."""
    bi, bj = params.b[i - 1], params.b[j - 1]
    factors = _b_factors(params, range(1, j + 1), range(1, i + 1))
    shift = _a_factors(params, range(1, m + 1), factors)
    const = bj ** y[j - 1] * bi ** (-x[i - 1]) * _a_const(params, range(1, m + 1), bj)
    return Factored(const, y[j - 1] - x[i - 1] - 1 + shift, factors)


def single_time_integrand(params: ParamSet, x, hj: int, m: int, i: int, j: int) -> Factored:
    """Integrand of F(i, j | x) for the multi-point single-time law."""
    bi, bj = params.b[i - 1], params.b[j - 1]
    factors = _b_factors(params, range(1, j), range(1, i + 1))
    shift = _a_factors(params, range(1, m + 1), factors)
    const = bj ** (hj - 1) * bi ** (-x[i - 1]) * _a_const(params, range(1, m + 1), bj)
    return Factored(const, hj - 1 - x[i - 1] + shift, factors)


def twotime_z_part(params: ParamSet, x, m: int, n: int, h: int, i: int) -> Factored:
    """z-factor of L1(i, .) and L2(i, .)."""
    bi = params.b[i - 1]
    factors = _b_factors(params, range(1, n + 1), range(1, i + 1))
    shift = _a_factors(params, range(1, m + 1), factors)
    const = bi ** (h - 1 - x[i - 1]) * _a_const(params, range(1, m + 1), bi)
    return Factored(const, h - 1 - x[i - 1] + shift, factors)


def twotime_w_part(params: ParamSet, m: int, n: int, h: int, M: int, H: int, j: int) -> Factored:
    """w-factor of L1(., j) and L2(., j)."""
    bj = params.b[j - 1]
    factors = _b_factors(params, range(1, j), range(1, n + 1))
    shift = _a_factors(params, range(m + 1, M + 1), factors)
    const = bj ** (H - h) * _a_const(params, range(m + 1, M + 1), bj)
    return Factored(const, H - h + shift, factors)


def G_function(params: ParamSet, S, T, h: int, power: int = 1, const=1) -> Factored:
    """G(z | S, T, h)**power with G = z^h prod_S (z - 1/b_k) prod_T (1 - a_k/z)^-1."""
    factors: dict = {}
    for k in S:
        _bump(factors, 1 / params.b[k - 1], power)
    shift = 0
    for k in T:
        ak = params.a[k - 1]
        if ak == 0:
            continue
        _bump(factors, ak, -power)
        shift += power
    return Factored(const, power * h + shift, factors)


def b_poles(params: ParamSet, N: int) -> list:
    return sorted({1 / params.b[k] for k in range(N)})


def a_poles(params: ParamSet, M: int) -> list:
    """Poles inside the small contour around the a_k (0 included)."""
    out = {params.a[k] for k in range(M) if params.a[k] != 0}
    out.add(params.a[0] * 0)
    return sorted(out)
