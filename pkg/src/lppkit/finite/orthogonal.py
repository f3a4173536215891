"""Fredholm forms for zero initial data: the single-time block kernel, the
orthogonalizers A and B, the J-matrices and the two-time Fredholm determinant.

Contours: gamma_b surrounds every 1/b_k and nothing else; Gamma_a (and the
smaller Gamma'_a) is a circle about 0 surrounding every a_k.  In residue mode
these become pole sets; in quadrature mode they are explicit circles.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..core.params import ParamSet
from ..errors import ContourPlacementError, ParameterError
from ..quadrature.contours import Circle, circle_integral, theta_integral
from ..quadrature.fredholm import balanced_det
from ..quadrature.series import Factored, double_contour, principal_part
from .integrands import a_poles, b_poles, single_time_integrand
from .results import DistResult, SingleTimeQuery, TwoTimeQuery, from_complex
from .transition import matrix_det
from .twotime import theta_tail_exact


@dataclass(frozen=True)
class FiniteContours:
    gamma_b: Circle
    Gamma_a: Circle
    Gamma_a_inner: Circle


def default_contours(params: ParamSet, N: int, M: int, nodes: int = 128) -> FiniteContours:
    """gamma_b passes through the midpoint between max a_k and min 1/b_k."""
    amax = max(float(params.a[k]) for k in range(M))
    inv = [1 / float(params.b[k]) for k in range(N)]
    mid = 0.5 * (amax + min(inv))
    right = max(inv) + (min(inv) - mid)
    gb = Circle(0.5 * (mid + right), 0.5 * (right - mid), nodes)
    ga = Circle(0.0, amax + (mid - amax) * 2 / 3, nodes)
    ga_in = Circle(0.0, amax + (mid - amax) / 3, nodes)
    return FiniteContours(gb, ga, ga_in)


def check_contours(params: ParamSet, N: int, M: int, c: FiniteContours) -> None:
    a = [float(params.a[k]) for k in range(M)]
    inv = [1 / float(params.b[k]) for k in range(N)]
    gb = c.gamma_b
    if any(gb.contains(ak) for ak in a) or gb.contains(0.0):
        raise ContourPlacementError("gamma_b encloses an a_k or the origin")
    if not all(gb.contains(r) for r in inv):
        raise ContourPlacementError("gamma_b misses a pole 1/b_k")
    for ga in (c.Gamma_a, c.Gamma_a_inner):
        if not all(ga.contains(ak) for ak in a) or any(ga.contains(r) for r in inv):
            raise ContourPlacementError("Gamma_a must enclose every a_k and no 1/b_k")
        if abs(ga.center - gb.center) < ga.radius + gb.radius:
            raise ContourPlacementError("Gamma_a meets gamma_b")
    if c.Gamma_a_inner.radius >= c.Gamma_a.radius:
        raise ContourPlacementError("Gamma'_a must lie inside Gamma_a")


def rational(params: ParamSet, b_up=(), b_down=(), a_up=(), a_down=(), zpow: int = 0,
             const=1) -> Factored:
    """const z^zpow prod_{b_up}(z-1/b) / prod_{b_down}(z-1/b) * prod_{a_up}(1-a/z) / prod_{a_down}(1-a/z)."""
    factors: dict = {}

    def bump(r, e):
        factors[r] = factors.get(r, 0) + e
    for k in b_up:
        bump(1 / params.b[k - 1], 1)
    for k in b_down:
        bump(1 / params.b[k - 1], -1)
    for k, e in [(k, 1) for k in a_up] + [(k, -1) for k in a_down]:
        ak = params.a[k - 1]
        if ak == 0:
            continue
        bump(ak, e)
        zpow -= e
    return Factored(const, zpow, factors)


def G_fn(params: ParamSet, S, T, h: int, power: int = 1) -> Factored:
    """G(z | S, T, h)**power, power = +1 or -1."""
    if power == 1:
        return rational(params, b_up=S, a_down=T, zpow=h)
    return rational(params, b_down=S, a_up=T, zpow=-h)


def _one(params: ParamSet):
    return params.b[0] * 0 + 1


def _single(f: Factored, poles, circle: Circle, method: str):
    if method == "residue":
        return f.residue_sum(poles)
    return circle_integral(f, circle).value


def _pair(f, g, f_poles, g_poles, layout, cf, cg, method):
    """(1/2 pi i)^2 int f(z) g(w)/(z - w)."""
    if method == "residue":
        return double_contour(f, g, f_poles, g_poles, layout)
    z, wz = cf.rule()
    w, ww = cg.rule()
    return complex((wz * f(z)) @ (1.0 / (z[:, None] - w[None, :])) @ (ww * g(w)))


def _setup(params, N, M, method, contours):
    if method not in ("residue", "quadrature"):
        raise ParameterError(f"unknown method {method!r}")
    c = contours or default_contours(params, N, M)
    if method == "quadrature":
        check_contours(params, N, M, c)
    return c, b_poles(params, N), a_poles(params, M)


# single-time block kernel -------------------------------------------------

def Fb_matrix(params: ParamSet, q: SingleTimeQuery, method: str = "residue", contours=None):
    """gamma_b part of the single-time matrix (unit lower triangular)."""
    N = q.N
    c, bp, _ = _setup(params, N, q.m, method, contours)
    return [[_single(single_time_integrand(params, q.x, q.h_of(j), q.m, i, j), bp,
                     c.gamma_b, method) for j in range(1, N + 1)] for i in range(1, N + 1)]


def Fb_inverse_contour(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                       contours=None):
    """Closed contour form of the inverse of the gamma_b part.

    Exact when all thresholds coincide.  With several distinct thresholds it
    still inverts the diagonal blocks but not the blocks below them.
    """
    N, m = q.N, q.m
    c, bp, _ = _setup(params, N, m, method, contours)
    out = []
    for i in range(1, N + 1):
        bi = params.b[i - 1]
        hi = q.h_of(i)
        const = bi ** (1 - hi)
        for k in range(1, m + 1):
            const = const / (1 - params.a[k - 1] * bi)
        row = [_single(rational(params, b_up=range(1, j), b_down=range(1, i + 1),
                                a_up=range(1, m + 1), zpow=1 - hi, const=const),
                       bp, c.gamma_b, method) for j in range(1, N + 1)]
        out.append(row)
    return out


def Fb_inverse(params: ParamSet, q: SingleTimeQuery, method: str = "residue", contours=None):
    """Inverse of the gamma_b part: contour formula for a single threshold,
    otherwise the terminating series sum_{k<N} (I - F_b)^k."""
    if len(set(q.thresholds)) == 1:
        return Fb_inverse_contour(params, q, method, contours)
    Fb = Fb_matrix(params, q, method, contours)
    N = q.N
    if method == "residue" and params.is_exact:
        E = [[(1 if i == j else 0) - Fb[i][j] for j in range(N)] for i in range(N)]
        out = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
        term = [row[:] for row in out]
        for _ in range(N - 1):
            term = [[sum(term[i][k] * E[k][j] for k in range(N)) for j in range(N)]
                    for i in range(N)]
            out = [[out[i][j] + term[i][j] for j in range(N)] for i in range(N)]
        return out
    E = np.eye(N) - np.array(Fb, dtype=complex)
    out, term = np.eye(N, dtype=complex), np.eye(N, dtype=complex)
    for _ in range(N - 1):
        term = term @ E
        out = out + term
    return out.tolist()


def spatial_fredholm_kernel(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                            contours=None):
    """Block kernel F with det(I + F) = P(G(m, n_k) < h_k for all k | 0)."""
    if any(v != 0 for v in q.x):
        raise ParameterError("the block kernel needs zero initial data")
    N, m = q.N, q.m
    c, bp, ap = _setup(params, N, m, method, contours)
    one = _one(params)
    out = []
    for i in range(1, N + 1):
        r, hr = q.block_of(i), q.h_of(i)
        g = rational(params, b_down=range(1, i + 1), a_up=range(1, m + 1), zpow=1 - hr,
                     const=one)
        row = []
        for j in range(1, N + 1):
            s, hs = q.block_of(j), q.h_of(j)
            val = 0 * one
            if r > s:
                val = val + _single(rational(params, b_down=range(j, i + 1), zpow=hs - hr,
                                             const=one), bp, c.gamma_b, method)
            f = rational(params, b_up=range(1, j), a_down=range(1, m + 1), zpow=hs - 1,
                         const=one)
            val = val + _pair(f, g, ap, bp, "disjoint", c.Gamma_a, c.gamma_b, method)
            row.append(val)
        out.append(row)
    return out


def spatial_fredholm_dist(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                          contours=None, tolerance: float = 1e-8) -> DistResult:
    """P(G(m, n_k) < h_k for all k | 0) as det(I + F) with the block kernel."""
    F = spatial_fredholm_kernel(params, q, method, contours)
    N = q.N
    mat = [[(1 if i == j else 0) + F[i][j] for j in range(N)] for i in range(N)]
    return from_complex(matrix_det(mat), tolerance=tolerance)


# two-time orthogonalization ------------------------------------------------

def orthogonalizer_A(params: ParamSet, q: TwoTimeQuery, i: int, j: int,
                     method: str = "residue", contours=None):
    N, m, h = q.N, q.m, q.h
    c, bp, _ = _setup(params, N, q.M, method, contours)
    bj = params.b[j - 1]
    const = bj ** (1 - h)
    for k in range(1, m + 1):
        const = const / (1 - params.a[k - 1] * bj)
    f = rational(params, b_up=range(1, j), b_down=range(1, i + 1), a_up=range(1, m + 1),
                 zpow=1 - h, const=const)
    return _single(f, bp, c.gamma_b, method)


def orthogonalizer_B(params: ParamSet, q: TwoTimeQuery, i: int, j: int,
                     method: str = "residue", contours=None):
    N, m, M, h, H = q.N, q.m, q.M, q.h, q.H
    c, bp, _ = _setup(params, N, M, method, contours)
    bi = params.b[i - 1]
    const = bi ** (h - H)
    for k in range(m + 1, M + 1):
        const = const / (1 - params.a[k - 1] * bi)
    f = rational(params, b_up=range(1, j), b_down=range(1, i + 1),
                 a_up=range(m + 1, M + 1), zpow=h - H, const=const)
    return _single(f, bp, c.gamma_b, method)


def _quartic(params, q, i, j, layout, method, c, bp, ap, zeta_shift):
    """J3 (layout z_outer) or J4 (w_outer)."""
    N, n, m, M, h, H = q.N, q.n, q.m, q.M, q.h, q.H
    top = range(1, N + 1)
    u = G_fn(params, range(1, i + 1), range(1, m + 1), h - 1 + zeta_shift, -1)
    v = G_fn(params, [k for k in top if k >= j], range(m + 1, M + 1), H - h, -1)
    gz = G_fn(params, range(1, n + 1), range(1, m + 1), h - 1)
    gw = G_fn(params, [k for k in top if k > n], range(m + 1, M + 1), H - h)
    if method == "residue":
        total = 0 * _one(params)
        for qa in bp:
            for k, cu in principal_part(u, qa):
                fz = gz.times(factors={qa: -k})
                for qb in bp:
                    for k2, cv in principal_part(v, qb):
                        fw = gw.times(factors={qb: -k2})
                        total = total + cu * cv * double_contour(fz, fw, ap, ap, layout)
        return total
    gb = c.gamma_b
    outer, inner = c.Gamma_a, c.Gamma_a_inner
    cz, cw = (outer, inner) if layout == "z_outer" else (inner, outer)
    s, ws = gb.rule()
    z, wz = cz.rule()
    w, ww = cw.rule()
    U = ws * u(s)
    V = ws * v(s)
    C1 = 1.0 / (z[None, :] - s[:, None])       # (zeta, z)
    C2 = 1.0 / (z[:, None] - w[None, :])       # (z, w)
    C3 = 1.0 / (w[:, None] - s[None, :])       # (w, omega)
    return complex(((U @ C1) * wz * gz(z)) @ C2 @ ((ww * gw(w)) * (C3 @ V)))


def J_matrix(which: str, params: ParamSet, q: TwoTimeQuery, i: int, j: int,
             method: str = "residue", contours=None, zeta_shift: int = 0):
    """Entry (i, j) of J1, J2, J3 or J4 for zero initial data.

    ``zeta_shift`` adds to the exponent of G(zeta | [i], [m], .) in J3/J4
    (0 gives h - 1, the value that makes the orthogonalization identity hold).
    """
    N, n, m, M, h, H = q.N, q.n, q.m, q.M, q.h, q.H
    c, bp, ap = _setup(params, N, M, method, contours)
    top = range(1, N + 1)
    if which == "J1":
        if j > n:
            return 0 * _one(params)
        f = G_fn(params, range(1, j), range(1, m + 1), h - 1)
        g = G_fn(params, range(1, i + 1), range(1, m + 1), h - 1, -1)
        return _pair(f, g, ap, bp, "disjoint", c.Gamma_a, c.gamma_b, method)
    if which == "J2":
        if i <= n:
            return 0 * _one(params)
        f = G_fn(params, [k for k in top if k > i], range(m + 1, M + 1), H - h)
        g = G_fn(params, [k for k in top if k >= j], range(m + 1, M + 1), H - h, -1)
        return _pair(f, g, ap, bp, "disjoint", c.Gamma_a, c.gamma_b, method)
    if which == "J3":
        return _quartic(params, q, i, j, "z_outer", method, c, bp, ap, zeta_shift)
    if which == "J4":
        return _quartic(params, q, i, j, "w_outer", method, c, bp, ap, zeta_shift)
    raise ParameterError(f"unknown J matrix {which!r}")


def _full(fn, N):
    return [[fn(i, j) for j in range(1, N + 1)] for i in range(1, N + 1)]


def twotime_fredholm_matrices(params: ParamSet, q: TwoTimeQuery, method: str = "residue",
                              contours=None, zeta_shift: int = 0):
    """F1 = J1 - J2 + J3 and F2 = J2 - J1 - J4."""
    if any(v != 0 for v in q.x):
        raise ParameterError("the two-time Fredholm form needs zero initial data")
    N = q.N
    J = {w: _full(lambda i, j, w=w: J_matrix(w, params, q, i, j, method, contours,
                                             zeta_shift), N)
         for w in ("J1", "J2", "J3", "J4")}
    F1 = [[J["J1"][i][j] - J["J2"][i][j] + J["J3"][i][j] for j in range(N)] for i in range(N)]
    F2 = [[J["J2"][i][j] - J["J1"][i][j] - J["J4"][i][j] for j in range(N)] for i in range(N)]
    return F1, F2


def fredholm_theta_matrix(F1, F2, n: int, theta):
    F1, F2 = np.asarray(F1, dtype=complex), np.asarray(F2, dtype=complex)
    N = len(F1)
    idx = np.arange(1, N + 1)
    up = np.where(idx > n, theta, 1.0)
    down = np.where(idx <= n, 1.0 / theta, 1.0)
    return np.eye(N) + up[:, None] * F1 + down[:, None] * F2


def twotime_fredholm_dist(params: ParamSet, q: TwoTimeQuery, method: str = "residue",
                          contours=None, tolerance: float = 1e-8,
                          theta: str = "auto") -> DistResult:
    """Two-time law P(G(m, n) < h, G(M, N) < H | 0) from the J-matrix Fredholm form."""
    F1, F2 = twotime_fredholm_matrices(params, q, method, contours)
    N, n = q.N, q.n
    if params.is_exact and method == "residue" and theta in ("auto", "exact"):
        def rows(t):
            # rows i <= n multiplied by t to clear the negative power
            return [[(t if i < n else 1) * (1 if i == j else 0) + t * F1[i][j] + F2[i][j]
                     for j in range(N)] for i in range(N)]
        return from_complex(theta_tail_exact(rows, N, n), tolerance=tolerance)
    res = theta_integral(lambda t: balanced_det(fredholm_theta_matrix(F1, F2, n, t)),
                         q.theta_radius, q.nodes)
    return from_complex(res.value, res.node_doubling_delta, tolerance)
