"""Two-time distribution of the geometric model via the L1/L2 double integrals."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..core.params import ParamSet, as_state
from ..errors import ContourPlacementError, ParameterError
from ..quadrature.contours import Circle, theta_integral
from ..quadrature.fredholm import balanced_det, det_exact
from ..quadrature.series import Factored, cauchy_inner, cauchy_outer, double_contour
from .integrands import twotime_w_part, twotime_z_part
from .results import DistResult, TwoTimeQuery, from_complex


def nested_circles(params: ParamSet, N: int, which: str, radius: float | None = None,
                   ratio: float = 1.25, nodes: int = 192):
    """(z-circle, w-circle) for L1 (z outside) or L2 (w outside)."""
    rmax = max(1 / float(params.b[k]) for k in range(N))
    inner = radius if radius is not None else 2.0 * rmax
    if inner <= rmax:
        raise ContourPlacementError(f"inner radius must exceed max 1/b_k = {rmax:.6g}")
    small, big = Circle(0.0, inner, nodes), Circle(0.0, inner * ratio, nodes)
    return (big, small) if which == "L1" else (small, big)


def double_circle_integral(f: Factored, g: Factored, cz: Circle, cw: Circle) -> complex:
    """(1/2 pi i)^2 int int f(z) g(w)/(z - w) on two concentric circles."""
    if abs(cz.radius - cw.radius) < 1e-12:
        raise ContourPlacementError("z and w circles must have distinct radii")
    z, wz = cz.rule()
    w, ww = cw.rule()
    return complex((wz * f(z)) @ (1.0 / (z[:, None] - w[None, :])) @ (ww * g(w)))


def twotime_parts(params: ParamSet, q: TwoTimeQuery):
    x = as_state(q.x, integral=True)
    N = q.N
    params.require(q.M, N)
    fs = [twotime_z_part(params, x, q.m, q.n, q.h, i) for i in range(1, N + 1)]
    gs = [twotime_w_part(params, q.m, q.n, q.h, q.M, q.H, j) for j in range(1, N + 1)]
    return fs, gs


def twotime_L(params: ParamSet, q: TwoTimeQuery, which: str, i: int, j: int,
              method: str = "residue", contours=None):
    """Entry (i, j) of L1 (z-contour outside) or L2 (w-contour outside).

    ``method``: "residue" (Laurent coefficients at infinity), "poles"
    (iterated finite residues) or "quadrature" (nested circles).
    """
    if which not in ("L1", "L2"):
        raise ParameterError("which must be 'L1' or 'L2'")
    x = as_state(q.x, integral=True)
    f = twotime_z_part(params, x, q.m, q.n, q.h, i)
    g = twotime_w_part(params, q.m, q.n, q.h, q.M, q.H, j)
    return _entry(f, g, which, method, contours, params, q.N)


def _entry(f, g, which, method, contours, params, N):
    if method == "residue":
        return cauchy_outer(f, g) if which == "L1" else cauchy_inner(f, g)
    if method == "poles":
        layout = "z_outer" if which == "L1" else "w_outer"
        return double_contour(f, g, f.poles(), g.poles(), layout)
    if method == "quadrature":
        cz, cw = contours or nested_circles(params, N, which)
        if (which == "L1") != (cz.radius > cw.radius):
            raise ContourPlacementError(f"contour ordering violated for {which}")
        return double_circle_integral(f, g, cz, cw)
    raise ParameterError(f"unknown method {method!r}")


def twotime_matrices(params: ParamSet, q: TwoTimeQuery, method: str = "residue",
                     contours: dict | None = None):
    fs, gs = twotime_parts(params, q)
    N = q.N
    if method == "quadrature":
        out = []
        for which in ("L1", "L2"):
            cz, cw = (contours or {}).get(which) or nested_circles(params, N, which)
            if (which == "L1") != (cz.radius > cw.radius):
                raise ContourPlacementError(f"contour ordering violated for {which}")
            z, wz = cz.rule()
            w, ww = cw.rule()
            F = np.array([wz * f(z) for f in fs])
            Gm = np.array([ww * g(w) for g in gs])
            out.append(F @ (1.0 / (z[:, None] - w[None, :])) @ Gm.T)
        return out[0], out[1]
    L1 = [[_entry(fs[i], gs[j], "L1", method, None, params, N) for j in range(N)]
          for i in range(N)]
    L2 = [[_entry(fs[i], gs[j], "L2", method, None, params, N) for j in range(N)]
          for i in range(N)]
    return L1, L2


def poly_coefficients_exact(det_at, degree: int) -> list:
    """Coefficients of a polynomial of given degree from exact values at 0..degree."""
    pts = [Fraction(t) for t in range(degree + 1)]
    vals = [det_at(t) for t in pts]
    # Newton divided differences, then expand
    coef = list(vals)
    for k in range(1, degree + 1):
        for i in range(degree, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (pts[i] - pts[i - k])
    poly = [Fraction(0)] * (degree + 1)
    for k in range(degree, -1, -1):
        # poly = poly * (t - pts[k]) + coef[k]
        new = [Fraction(0)] * (degree + 1)
        for d in range(degree):
            new[d + 1] += poly[d]
            new[d] -= pts[k] * poly[d]
        new[0] += coef[k]
        poly = new
    return poly


def theta_tail_exact(rows_at, N: int, n: int) -> Fraction:
    """Exact theta-integral of t^{-n} P(t)/(t - 1) with P(t) = det(rows_at(t)), deg P <= N.

    The residues at 0 and 1 cancel for negative powers, so the value is the sum
    of the coefficients of t^k, k >= n.
    """
    coeffs = poly_coefficients_exact(lambda t: det_exact(rows_at(t)), N)
    return sum(coeffs[n:], Fraction(0))


def twotime_theta_matrix(L1, L2, n: int, theta):
    """theta^{1{i>n}} L1 - theta^{-1{i<=n}} L2 as an array."""
    L1, L2 = np.asarray(L1, dtype=complex), np.asarray(L2, dtype=complex)
    N = len(L1)
    up = np.where(np.arange(1, N + 1) > n, theta, 1.0)
    down = np.where(np.arange(1, N + 1) <= n, 1.0 / theta, 1.0)
    return up[:, None] * L1 - down[:, None] * L2


def twotime_dist(params: ParamSet, q: TwoTimeQuery, method: str = "residue",
                 tolerance: float = 1e-8, theta: str = "auto") -> DistResult:
    """P(G(m, n) < h, G(M, N) < H | G(0, .) = x).

    With Fraction parameters and theta="auto" the theta integral is done
    exactly; otherwise by the pole-subtracted trapezoid rule on |theta| = r.
    """
    L1, L2 = twotime_matrices(params, q, method)
    N, n = q.N, q.n
    exact = params.is_exact and method != "quadrature" and theta in ("auto", "exact")
    if exact:
        def rows(t):
            return [[t * L1[i][j] - L2[i][j] for j in range(N)] for i in range(N)]
        return from_complex(theta_tail_exact(rows, N, n), tolerance=tolerance)
    L1a = np.array(L1, dtype=complex)
    L2a = np.array(L2, dtype=complex)
    res = theta_integral(lambda t: balanced_det(twotime_theta_matrix(L1a, L2a, n, t)),
                         q.theta_radius, q.nodes)
    return from_complex(res.value, res.node_doubling_delta, tolerance)
