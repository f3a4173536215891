"""Finite-T two-time probabilities of the perturbed model on descent circles,
and their distance to the T -> infinity limit.

With every b_j = 1 the finite integrands have poles of order up to N at 1,
so residues in floating point are useless for large N.  Instead the J
matrices are integrated with the trapezoid rule on circles that pass close to
the critical point sqrt(q): circles about 1 of radius w_c - c4 d T^(-1/3) for
zeta, omega and circles about 0 of radius sqrt(q) - c4 D T^(-1/3) for z, w.
Each contour factor is divided by its modulus at sqrt(q); the leftover row
and column scales are absorbed by a diagonal similarity, which leaves every
determinant unchanged.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ..errors import ContourPlacementError, LppkitError
from ..quadrature.contours import Circle, theta_integral
from ..quadrature.fredholm import balanced_det
from ..finite.results import DistResult, from_complex
from .kernels import KernelConfig
from .scaling import KPZCoords, kpz_discrete_params, perturbed_model, scaling_constants
from .twotime import bbp_two_time


def _log_G(z, a, n_up: int, zpow: int):
    """log of z^zpow (z - 1)^n_up / prod_k (1 - a_k/z), up to branch choice."""
    z = np.asarray(z, dtype=complex)
    out = zpow * np.log(z) + n_up * np.log(z - 1.0)
    for ak in a:
        out = out - np.log(1.0 - ak / z)
    return out


class _Factor:
    """exp(log f(z)) sampled on a contour and normalized at the critical point."""

    def __init__(self, log_f, nodes, zc):
        self.scale = float(np.real(log_f(zc)))
        self.values = np.exp(log_f(nodes) - self.scale)


@dataclass(frozen=True)
class DescentContours:
    zeta: Circle
    omega: Circle
    z: Circle
    w: Circle


def descent_contours(q, T, d1: float, d2: float, D1: float, D2: float,
                     nodes: int | None = None, lambdas=()) -> DescentContours:
    """Circles at offsets d, D (in limit units) from the critical point.

    The z-circle has radius sqrt(q) - c4 D1 T^(-1/3), so a perturbed a_k
    lies inside it exactly when D1 < lambda_k.  The node count, unless given,
    is set from the smallest relative gap between a circle and the nearest
    singularity so the trapezoid error is below e^-40.
    """
    k = scaling_constants(q)
    s, eps = math.sqrt(q), k.c4 * T ** (-1 / 3)
    radii = (k.w_c - eps * d1, k.w_c - eps * d2, s - eps * D1, s - eps * D2)
    if nodes is None:
        gaps = [eps * (d1 + min(D1, D2)), eps * (d2 + min(D1, D2)), eps * abs(D2 - D1)]
        gaps += [eps * (lam - max(D1, D2)) for lam in lambdas]
        gap = min(g for g in gaps if g > 0)
        nodes = 64 * math.ceil(max(512, 45 * s / gap) / 64)
    return DescentContours(Circle(1.0, radii[0], nodes), Circle(1.0, radii[1], nodes),
                           Circle(0.0, radii[2], nodes), Circle(0.0, radii[3], nodes))


def _check(c: DescentContours, a) -> None:
    amax = max(a)
    for name in ("z", "w"):
        r = getattr(c, name).radius
        if not amax < r:
            raise ContourPlacementError(f"{name}-circle (radius {r:.4g}) misses a_k = {amax:.4g}")
    for name in ("zeta", "omega"):
        r = getattr(c, name).radius
        if not 0 < r < 1 - amax:
            raise ContourPlacementError(f"{name}-circle encloses an a_k")
        if r + max(c.z.radius, c.w.radius) >= 1:
            raise ContourPlacementError(f"{name}-circle meets a circle about 0")


def finite_fredholm_matrices(q, lambdas, T, first: KPZCoords, second: KPZCoords,
                             cfg: KernelConfig | None = None, nodes: int | None = None):
    """(F1, F2, n, info) for the perturbed model at scale T, similarity-scaled.

    Contour offsets come from ``cfg`` exactly as for the limit kernels.
    """
    n, m, h = kpz_discrete_params(T, first, q)
    N, M, H = kpz_discrete_params(T, second, q)
    if not (m < M and n < N):
        raise ContourPlacementError("need m < M and n < N")
    params = perturbed_model(q, lambdas, T, M, N)
    a = [float(v) for v in params.a]
    a1, a2 = a[:m], a[m:M]
    cfg = cfg or KernelConfig()
    D1, D2 = cfg.offsets(lambdas)
    inner = descent_contours(q, T, cfg.d1, cfg.d2, D1, D2, nodes, lambdas)
    outer = descent_contours(q, T, cfg.d1, cfg.d2, D2, D1, inner.z.nodes, lambdas)
    _check(inner, a)
    _check(outer, a)
    zc = math.sqrt(q)
    idx = np.arange(1, N + 1)

    def rows(log_fn, circle):
        s, ws = circle.rule()
        fs = [_Factor(lambda x, i=i: log_fn(x, i), s, zc) for i in idx]
        return (np.array([f.values for f in fs]) * ws[None, :],
                np.array([f.scale for f in fs]))

    # zeta rows 1/G(zeta | [i], [m], h-1); these scales define the similarity
    Ui, su = rows(lambda x, i: -_log_G(x, a1, i, h - 1), inner.zeta)
    # J1 columns G(z | [j-1], [m], h-1) on the z circle
    Zj, sz = rows(lambda x, j: _log_G(x, a1, j - 1, h - 1), inner.z)
    # J2 rows G(w | {k > i}, [m+1..M], H-h) and columns 1/G(omega | {k >= j}, ...)
    Wi, sw = rows(lambda x, i: _log_G(x, a2, N - i, H - h), inner.w)
    Oj, so = rows(lambda x, j: -_log_G(x, a2, N - j + 1, H - h), inner.omega)

    s_, _ = inner.zeta.rule()
    o_, _ = inner.omega.rule()
    sim = su     # F -> diag(e^{-sim}) F diag(e^{sim})

    def scaled(core, row_scale, col_scale, mid=0.0):
        e = (row_scale - sim)[:, None] + (col_scale + sim)[None, :] + mid
        return core * np.exp(e)

    z_, _ = inner.z.rule()
    J1 = scaled(Ui @ (1.0 / (z_[None, :] - s_[:, None])) @ Zj.T, su, sz)
    J1[:, idx > n] = 0.0
    w_, _ = inner.w.rule()
    J2 = scaled(Wi @ (1.0 / (w_[:, None] - o_[None, :])) @ Oj.T, sw, so)
    J2[idx <= n, :] = 0.0

    def quartic(c: DescentContours):
        z, wz = c.z.rule()
        w, ww = c.w.rule()
        gz = _Factor(lambda x: _log_G(x, a1, n, h - 1), z, zc)
        gw = _Factor(lambda x: _log_G(x, a2, N - n, H - h), w, zc)
        C1 = 1.0 / (z[None, :] - s_[:, None])
        C2 = 1.0 / (z[:, None] - w[None, :])
        C3 = 1.0 / (w[:, None] - o_[None, :])
        core = ((Ui @ C1) * (wz * gz.values)[None, :]) @ C2 @ (
            (ww * gw.values)[:, None] * (C3 @ Oj.T))
        return scaled(core, su, so, gz.scale + gw.scale)

    J3, J4 = quartic(inner), quartic(outer)
    info = dict(zip(("n", "m", "h", "N", "M", "H"), (n, m, h, N, M, H)), nodes=inner.z.nodes)
    return J1 - J2 + J3, J2 - J1 - J4, n, info


def finite_twotime_descent(q, lambdas, T, first: KPZCoords, second: KPZCoords,
                           cfg: KernelConfig | None = None, nodes: int | None = None,
                           theta_radius: float = 1.5, theta_nodes: int | None = None) -> DistResult:
    """P(G(m, n) < h, G(M, N) < H) for the perturbed model at scale T."""
    F1, F2, n, info = finite_fredholm_matrices(q, lambdas, T, first, second, cfg, nodes)
    N = len(F1)
    pos = np.arange(1, N + 1) > n
    eye = np.eye(N)

    def g(t):
        up = np.where(pos, t, 1.0)
        down = np.where(pos, 1.0, 1.0 / t)
        return balanced_det(eye + up[:, None] * F1 + down[:, None] * F2)

    res = theta_integral(g, theta_radius, theta_nodes or max(64, 2 * N + 16))
    return from_complex(res.value, res.node_doubling_delta, 1e-6, info)


def finite_to_limit_diagnostic(q, T_values, first: KPZCoords, second: KPZCoords, lambdas,
                               cfg: KernelConfig | None = None) -> list:
    """Rows {T, indices, finite, limit, abs_error, seconds}; failed T values are skipped."""
    limit = bbp_two_time(first, second, lambdas, cfg).value
    table = []
    for T in T_values:
        t0 = time.perf_counter()
        try:
            r = finite_twotime_descent(q, lambdas, T, first, second, cfg)
        except LppkitError:
            continue
        table.append({"T": T, **r.details, "finite": r.value, "limit": limit,
                      "abs_error": abs(r.value - limit),
                      "seconds": time.perf_counter() - t0})
    return table
