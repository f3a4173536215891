"""Transition probabilities and multi-point single-time laws (geometric model)."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..core.params import Kind, ParamSet, as_state
from ..errors import ContourPlacementError, ParameterError
from ..quadrature.contours import Circle, circle_integral
from ..quadrature.fredholm import balanced_det, det_exact
from ..quadrature.series import Factored
from .integrands import single_time_integrand, transition_integrand
from .results import DistResult, SingleTimeQuery, from_complex

METHODS = ("residue", "quadrature")


def default_circle(params: ParamSet, N: int, nodes: int = 128) -> Circle:
    """Radius twice the largest 1/b_k."""
    rmax = max(1 / float(params.b[k]) for k in range(N))
    return Circle(0.0, 2.0 * rmax, nodes)


def check_circle(params: ParamSet, N: int, c: Circle) -> None:
    rmax = max(1 / float(params.b[k]) for k in range(N))
    if abs(c.center) != 0 or c.radius <= rmax:
        raise ContourPlacementError(
            f"contour must be centered at 0 with radius > max 1/b_k = {rmax:.6g}")


def evaluate(f: Factored, method: str, contour: Circle | None):
    """Integral over a circle enclosing every finite pole."""
    if method == "residue":
        return f.integral_all()
    if method == "quadrature":
        return circle_integral(f, contour).value
    raise ParameterError(f"method must be one of {METHODS}")


def _geometric(params: ParamSet) -> None:
    if params.kind is not Kind.GEOMETRIC:
        raise ParameterError("geometric parameters required")


def matrix_det(mat):
    """Exact determinant for Fraction entries, balanced LU otherwise."""
    if mat and isinstance(mat[0][0], Fraction):
        return det_exact(mat)
    return balanced_det(np.array(mat, dtype=complex))


def transition_matrix_entry(params: ParamSet, x, y, m: int, i: int, j: int,
                            contour: Circle | None = None, method: str = "residue"):
    """Entry M(i, j | x, y) of the m-step transition determinant."""
    _geometric(params)
    N = len(x)
    if method == "quadrature":
        contour = contour or default_circle(params, N)
        check_circle(params, N, contour)
    return evaluate(transition_integrand(params, x, y, m, i, j), method, contour)


def transition_matrix(params: ParamSet, x, y, m: int, method: str = "residue",
                      contour: Circle | None = None) -> list:
    x = as_state(x, integral=True)
    y = as_state(y, len(x), integral=True)
    N = len(x)
    params.require(m, N)
    return [[transition_matrix_entry(params, x, y, m, i, j, contour, method)
             for j in range(1, N + 1)] for i in range(1, N + 1)]


def transition_prob(params: ParamSet, x, y, m: int, method: str = "residue",
                    contour: Circle | None = None, tolerance: float = 1e-8) -> DistResult:
    """P(G(m) = y | G(0) = x) as the determinant of the transition matrix."""
    return from_complex(matrix_det(transition_matrix(params, x, y, m, method, contour)),
                        tolerance=tolerance)


def single_time_matrix(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                       contour: Circle | None = None) -> list:
    _geometric(params)
    x = as_state(q.x, integral=True)
    N = len(x)
    params.require(q.m, N)
    if method == "quadrature":
        contour = contour or default_circle(params, N)
        check_circle(params, N, contour)
    return [[evaluate(single_time_integrand(params, x, q.h_of(j), q.m, i, j), method, contour)
             for j in range(1, N + 1)] for i in range(1, N + 1)]


def single_time_dist(params: ParamSet, q: SingleTimeQuery, method: str = "residue",
                     contour: Circle | None = None, tolerance: float = 1e-8) -> DistResult:
    """P(G(m, n_k) < h_k for every k | G(0, .) = x)."""
    return from_complex(matrix_det(single_time_matrix(params, q, method, contour)),
                        tolerance=tolerance)
