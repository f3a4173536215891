"""Exponential last passage percolation: transition density, single-time and
two-time laws, and the geometric-to-exponential limit."""
from __future__ import annotations

import math
from fractions import Fraction
from types import SimpleNamespace

import mpmath
import numpy as np

from ..core.params import Kind, ParamSet
from ..errors import ContourPlacementError, ParameterError
from ..quadrature.contours import Circle, circle_integral, theta_integral
from ..quadrature.fredholm import balanced_det
from ..quadrature.series import Factored, double_contour
from .integrands import transition_integrand
from .results import DistResult, SingleTimeQuery, TwoTimeQuery, from_complex
from .twotime import double_circle_integral, twotime_theta_matrix


def _exp_params(params: ParamSet):
    if params.kind is not Kind.EXPONENTIAL:
        raise ParameterError("exponential parameters required")
    return [float(v) for v in params.alpha], [float(v) for v in params.beta]


def _exp_factored(alpha, beta, c, shift_j, shift_i, bi_set, b_up, b_down, a_ks, bj) -> Factored:
    """exp(c z) e^{-shift} prod_{b_up}(z-beta)/prod_{b_down}(z-beta) prod_a (alpha_k+bj)/(z+alpha_k)."""
    const = math.exp(-shift_j + shift_i)
    factors: dict = {}
    for k in b_up:
        factors[beta[k - 1]] = factors.get(beta[k - 1], 0) + 1
    for k in b_down:
        factors[beta[k - 1]] = factors.get(beta[k - 1], 0) - 1
    for k in a_ks:
        const *= alpha[k - 1] + bj
        factors[-alpha[k - 1]] = factors.get(-alpha[k - 1], 0) - 1
    return Factored(const, 0, factors, exp_coeff=c)


def exp_circle(params: ParamSet, N: int, M: int, nodes: int = 256) -> Circle:
    alpha, beta = _exp_params(params)
    R = 1.0 + 2.0 * max([abs(a) for a in alpha[:M]] + [abs(b) for b in beta[:N]])
    return Circle(0.0, R, nodes)


def _check_circle(params, N, M, c: Circle):
    alpha, beta = _exp_params(params)
    rmax = max([abs(a) for a in alpha[:M]] + [abs(b) for b in beta[:N]])
    if c.radius <= rmax or c.center != 0:
        raise ContourPlacementError(f"radius must exceed max(alpha, beta) = {rmax:.6g}")


def exp_transition_entry(params: ParamSet, x, y, m: int, i: int, j: int) -> Factored:
    alpha, beta = _exp_params(params)
    return _exp_factored(alpha, beta, y[j - 1] - x[i - 1], y[j - 1] * beta[j - 1],
                         x[i - 1] * beta[i - 1], None, range(1, j + 1), range(1, i + 1),
                         range(1, m + 1), beta[j - 1])


def _evaluate(f: Factored, method: str, c: Circle | None):
    if method == "residue":
        return complex(f.residue_sum(f.poles()))
    if method == "quadrature":
        return circle_integral(f, c).value
    raise ParameterError(f"unknown method {method!r}")


def exp_transition_density(params: ParamSet, x, y, m: int, method: str = "residue",
                           contour: Circle | None = None) -> float:
    """Density of G(m) at y given G(0) = x (exponential weights)."""
    N = len(x)
    params.require(m, N)
    if any(y[k] < x[k] for k in range(N)) or any(b < a for a, b in zip(y, y[1:])):
        return 0.0
    if method == "quadrature":
        contour = contour or exp_circle(params, N, m)
        _check_circle(params, N, m, contour)
    mat = np.array([[_evaluate(exp_transition_entry(params, x, y, m, i, j), method, contour)
                     for j in range(1, N + 1)] for i in range(1, N + 1)])
    return float(balanced_det(mat).real)


def exp_single_time_entry(params: ParamSet, x, hj: float, m: int, i: int, j: int) -> Factored:
    alpha, beta = _exp_params(params)
    return _exp_factored(alpha, beta, hj - x[i - 1], hj * beta[j - 1], x[i - 1] * beta[i - 1],
                         None, range(1, j), range(1, i + 1), range(1, m + 1), beta[j - 1])


def exp_single_time_dist(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                         contour: Circle | None = None, tolerance: float = 1e-8) -> DistResult:
    """P(G(m, n_k) <= h_k for all k | x) for exponential weights (atomless, so < and <= agree)."""
    N = q.N
    params.require(q.m, N)
    if method == "quadrature":
        contour = contour or exp_circle(params, N, q.m)
        _check_circle(params, N, q.m, contour)
    mat = np.array([[_evaluate(exp_single_time_entry(params, q.x, q.h_of(j), q.m, i, j),
                               method, contour) for j in range(1, N + 1)]
                    for i in range(1, N + 1)])
    return from_complex(balanced_det(mat), tolerance=tolerance)


def exp_twotime_parts(params: ParamSet, q: TwoTimeQuery):
    alpha, beta = _exp_params(params)
    N, n, m, M, h, H, x = q.N, q.n, q.m, q.M, q.h, q.H, q.x
    params.require(M, N)
    fs = [_exp_factored(alpha, beta, h - x[i - 1], (h - x[i - 1]) * beta[i - 1], 0.0, None,
                        range(1, n + 1), range(1, i + 1), range(1, m + 1), beta[i - 1])
          for i in range(1, N + 1)]
    gs = [_exp_factored(alpha, beta, H - h, (H - h) * beta[j - 1], 0.0, None,
                        range(1, j), range(1, n + 1), range(m + 1, M + 1), beta[j - 1])
          for j in range(1, N + 1)]
    return fs, gs


def exp_twotime_matrices(params: ParamSet, q: TwoTimeQuery, method: str = "residue"):
    fs, gs = exp_twotime_parts(params, q)
    N = q.N
    if method == "residue":
        L1 = [[complex(double_contour(f, g, f.poles(), g.poles(), "z_outer")) for g in gs]
              for f in fs]
        L2 = [[complex(double_contour(f, g, f.poles(), g.poles(), "w_outer")) for g in gs]
              for f in fs]
        return np.array(L1), np.array(L2)
    if method == "quadrature":
        c = exp_circle(params, N, q.M, nodes=192)
        big = Circle(0.0, 1.25 * c.radius, 192)
        L1 = np.array([[double_circle_integral(f, g, big, c) for g in gs] for f in fs])
        L2 = np.array([[double_circle_integral(f, g, c, big) for g in gs] for f in fs])
        return L1, L2
    raise ParameterError(f"unknown method {method!r}")


def exp_twotime_dist(params: ParamSet, q: TwoTimeQuery, method: str = "residue",
                     tolerance: float = 1e-8) -> DistResult:
    """P(G(m, n) < h, G(M, N) < H | x) for exponential weights."""
    L1, L2 = exp_twotime_matrices(params, q, method)
    res = theta_integral(lambda t: balanced_det(twotime_theta_matrix(L1, L2, q.n, t)),
                         q.theta_radius, q.nodes)
    return from_complex(res.value, res.node_doubling_delta, tolerance)


def _scaled(v, eps: Fraction) -> int:
    return math.floor(Fraction(str(v)) / eps)


def geometric_limit_transition(params: ParamSet, x, y, m: int, eps, dps: int = 60) -> float:
    """P_geom(G(m) = floor(y/eps) | floor(x/eps)) / eps^N with a = 1 - eps alpha, b = 1 - eps beta.

    Converges to the exponential transition density as eps -> 0.  Evaluated by
    residues in mpmath because the poles cluster within O(eps) of 1.
    """
    alpha, beta = _exp_params(params)
    N = len(x)
    e = Fraction(str(eps))
    xe = [_scaled(v, e) for v in x]
    ye = [_scaled(v, e) for v in y]
    with mpmath.workdps(dps):
        em = mpmath.mpf(e.numerator) / e.denominator
        geo = SimpleNamespace(a=[1 - em * mpmath.mpf(str(a)) for a in alpha],
                              b=[1 - em * mpmath.mpf(str(b)) for b in beta])
        mat = []
        for i in range(1, N + 1):
            row = []
            for j in range(1, N + 1):
                f = transition_integrand(geo, xe, ye, m, i, j)
                row.append(f.residue_sum(f.poles()))
            mat.append(row)
        val = mpmath.det(mpmath.matrix(mat)) / em ** N
        return float(val)
